//! The `order3` command line: argument grammar, command implementations and
//! report rendering. Exit codes: 0 when every check passes, 1 on a mismatch,
//! 2 on usage or resource errors.

mod report;
mod subgroups;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::classify::{
    class_label, order3_class_records_cached, sylow2_subgroup, ClassRecord, ClassifyError,
};
use crate::groups::{
    construct, construct_cached, parse_bundle, sp4_on_vectors, wreath_diagonal_and_swap, Cache,
    GroupError, GroupName,
};
use crate::lie::{
    emit_exception_tables, quoted_centralizer_orders, render_table, verdict, ClassDescriptor,
    ClassLabel, Family, GroupKind, LieError, QuotedCase, TableFormat,
};
use crate::perm::{
    conjugation_orbit, element_search, GroupHandle, PermError, Permutation, SearchMode,
    SearchResult, DEFAULT_CAP,
};
use crate::robinson::{check_bound, DegreeData, RobinsonError};

pub use report::{CheckOutcome, GroupMeta, Report, REPORT_VERSION};

#[derive(Debug, Parser)]
#[command(
    name = "order3",
    version,
    about = "Order-3 elements, involutions and 2-subgroups in finite groups"
)]
pub struct Cli {
    /// Cache directory; overrides ORDER3_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest group order enumerated by brute force.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Output format: md, csv or json.
    #[arg(long, global = true, default_value = "md", value_parser = parse_format)]
    pub format: TableFormat,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_format(s: &str) -> Result<TableFormat, String> {
    s.parse().map_err(|e: LieError| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a group and print its degree, order and exclusion status.
    Construct { name: String },
    /// Brute-force verdicts for every order-3 class.
    Check { name: String },
    /// Symbolic verdicts for a family member.
    Predict(PredictArgs),
    /// Compare brute-force and symbolic verdicts class by class.
    Crosscheck(CrosscheckArgs),
    /// Normalizers of 2-subgroups in PGammaL2(8).
    #[command(name = "gamma-l28")]
    GammaL28,
    /// The FrobA4 and wreath-product examples.
    Counterexamples,
    /// Robinson's bound against a degree file.
    Robinson { name: String, degrees: PathBuf },
    /// Exception tables up to a field size.
    Table1 {
        #[arg(long, default_value_t = 32)]
        qmax: u64,
    },
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub qsq: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    /// Class label; all classes when omitted.
    #[arg(long = "class", alias = "type")]
    pub class: Option<String>,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    pub name: String,
    /// Restrict to unipotent classes with this Jordan type, e.g. J2J2.
    #[arg(long)]
    pub unipotent: Option<String>,
    /// Compare centralizer orders with the tabulated formulas.
    #[arg(long, requires = "unipotent")]
    pub centralizer_orders: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Robinson(#[from] RobinsonError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Settings shared by every command.
pub struct Context {
    pub cache: Option<Cache>,
    pub cap: u64,
}

/// Parses `args`, runs the command and writes the report; returns the exit code.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let start = Instant::now();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => execute(&cli),
    };
    let code = match result {
        Ok(Output::Report(r)) => {
            let _ = out.write_all(r.render(cli.format).as_bytes());
            if r.pass {
                0
            } else {
                1
            }
        }
        Ok(Output::Text(t)) => {
            let _ = out.write_all(t.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Robinson(RobinsonError::Violated { .. }) => 1,
                _ => 2,
            }
        }
    };
    let _ = writeln!(err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    code
}

/// What a command prints: a structured report or preformatted text.
pub enum Output {
    Report(Report),
    Text(String),
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Context {
        cache: Cache::resolve(cli.cache_dir.clone()),
        cap: cli.cap,
    };
    let report = match &cli.command {
        Command::Construct { name } => cmd_construct(&ctx, name)?,
        Command::Check { name } => cmd_check(&ctx, name)?,
        Command::Predict(a) => cmd_predict(a)?,
        Command::Crosscheck(a) => cmd_crosscheck(&ctx, a)?,
        Command::GammaL28 => cmd_gamma_l28(&ctx)?,
        Command::Counterexamples => cmd_counterexamples(&ctx)?,
        Command::Robinson { name, degrees } => cmd_robinson(&ctx, name, degrees)?,
        Command::Table1 { qmax } => return Ok(Output::Text(cmd_table1(*qmax, cli.format)?)),
    };
    Ok(Output::Report(report))
}

fn group_name(s: &str) -> Result<GroupName, CliError> {
    s.parse::<GroupName>().map_err(CliError::from)
}

fn records(ctx: &Context, handle: &GroupHandle) -> Result<Vec<ClassRecord>, CliError> {
    order3_class_records_cached(handle, ctx.cap, ctx.cache.as_ref()).map_err(|e| match e {
        ClassifyError::Perm(PermError::CapExceeded { order, cap }) => CliError::Usage(format!(
            "{} has order {order}, above the enumeration cap {cap}; use `predict` for its symbolic verdicts",
            handle.name()
        )),
        e => e.into(),
    })
}

pub fn cmd_construct(ctx: &Context, name: &str) -> Result<Report, CliError> {
    let h = construct_cached(&group_name(name)?, ctx.cache.as_ref())?;
    let mut r = Report::new(format!("construct {name}"))
        .group(&h)
        .columns(&["name", "degree", "order", "excluded"]);
    r.row(vec![
        h.name().to_string(),
        h.degree().to_string(),
        h.order().to_string(),
        h.info().excluded.clone().unwrap_or_else(|| "no".into()),
    ]);
    Ok(r)
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

const CHECK_COLUMNS: [&str; 9] = [
    "representative",
    "label",
    "class size",
    "centralizer order",
    "centralizes",
    "centralizer witness",
    "normalizes",
    "normalizer witness",
    "2-group order",
];

fn record_row(handle: &GroupHandle, rec: &ClassRecord, label: Option<&ClassLabel>) -> Vec<String> {
    let label = label
        .cloned()
        .or_else(|| class_label(handle, &rec.representative));
    vec![
        rec.representative.to_string(),
        opt(&label),
        rec.class_size.to_string(),
        rec.centralizer_order.to_string(),
        rec.centralizes.to_string(),
        opt(&rec.centralizer_witness),
        rec.normalizes.to_string(),
        opt(&rec
            .normalizer_witness
            .as_ref()
            .map(|w| w.involution.clone())),
        opt(&rec.normalizer_witness.as_ref().map(|w| w.two_group_order)),
    ]
}

pub fn cmd_check(ctx: &Context, name: &str) -> Result<Report, CliError> {
    let h = construct_cached(&group_name(name)?, ctx.cache.as_ref())?;
    let recs = records(ctx, &h)?;
    let mut r = Report::new(format!("check {name}"))
        .group(&h)
        .columns(&CHECK_COLUMNS);
    for rec in &recs {
        r.row(record_row(&h, rec, None));
    }
    Ok(r)
}

/// Family and parameter from the `predict` flags.
pub fn predict_kind(a: &PredictArgs) -> Result<GroupKind, CliError> {
    let family: Family = a.family.parse()?;
    let need = |v: Option<u64>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("--family {} needs --{flag}", family.as_str())))
    };
    let param = match family {
        Family::Alt | Family::Sym => need(a.n, "n")?,
        Family::Ree => need(a.qsq.or(a.q), "qsq")?,
        Family::J3 | Family::J3Aut => 0,
        _ => need(a.q, "q")?,
    };
    Ok(GroupKind::new(family, param)?)
}

fn predict_echo(a: &PredictArgs) -> String {
    let mut s = format!("predict --family {}", a.family);
    for (flag, v) in [("q", a.q), ("qsq", a.qsq), ("n", a.n)] {
        if let Some(v) = v {
            s.push_str(&format!(" --{flag} {v}"));
        }
    }
    if let Some(c) = &a.class {
        s.push_str(&format!(" --class {c}"));
    }
    s
}

pub fn cmd_predict(a: &PredictArgs) -> Result<Report, CliError> {
    let kind = predict_kind(a)?;
    if let Some(reason) = kind.exclusion() {
        return Err(LieError::Excluded {
            group: kind.to_string(),
            reason,
        }
        .into());
    }
    let labels = match &a.class {
        Some(c) => vec![ClassLabel::parse(c, &kind)?],
        None => kind.labels(),
    };
    let mut r = Report::new(predict_echo(a)).columns(&[
        "group",
        "class",
        "centralizes",
        "centralizes rule",
        "normalizes",
        "normalizes rule",
        "desk-verifiable",
    ]);
    for label in labels {
        let v = verdict(&ClassDescriptor::new(kind, label.clone()))?;
        r.row(vec![
            kind.to_string(),
            label.to_string(),
            v.centralizes.value.to_string(),
            v.centralizes.rule.to_string(),
            v.normalizes.value.to_string(),
            v.normalizes.rule.to_string(),
            v.desk_verifiable.to_string(),
        ]);
    }
    Ok(r)
}

/// Whether `b = g^-1 a g` for some `g` in the group, by one stream scan.
fn conjugate_in(
    handle: &GroupHandle,
    a: &Permutation,
    b: &Permutation,
    cap: u64,
) -> Result<bool, CliError> {
    let (ai, bi) = (a.images(), b.images());
    // i^(a g) = g[a[i]] and i^(g b) = b[g[i]].
    let pred = |g: &[u16]| (0..g.len()).all(|i| g[ai[i] as usize] == bi[g[i] as usize]);
    match element_search(handle.chain(), cap, pred, SearchMode::First)? {
        SearchResult::First(found) => Ok(found.is_some()),
        _ => unreachable!("First mode returns the first match"),
    }
}

/// Labels for each record from a bundle's `class` lines, matched by conjugacy.
fn bundle_labels(
    ctx: &Context,
    handle: &GroupHandle,
    kind: &GroupKind,
    path: &std::path::Path,
    recs: &[ClassRecord],
) -> Result<Vec<Option<ClassLabel>>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let bundle = parse_bundle(&text).map_err(|msg| GroupError::Bundle {
        path: path.display().to_string(),
        msg,
    })?;
    let mut labels = vec![None; recs.len()];
    for c in &bundle.classes {
        let label = ClassLabel::parse(&c.label, kind)?;
        for (i, rec) in recs.iter().enumerate() {
            if labels[i].is_none()
                && conjugate_in(handle, &rec.representative, &c.representative, ctx.cap)?
            {
                labels[i] = Some(label.clone());
                break;
            }
        }
    }
    Ok(labels)
}

pub fn cmd_crosscheck(ctx: &Context, a: &CrosscheckArgs) -> Result<Report, CliError> {
    if let Some(u) = &a.unipotent {
        return crosscheck_unipotent(ctx, a, u);
    }
    let name = group_name(&a.name)?;
    let h = construct_cached(&name, ctx.cache.as_ref())?;
    let kind = h.info().kind.ok_or_else(|| {
        CliError::Usage(format!("{} has no family for symbolic verdicts", h.name()))
    })?;
    let recs = records(ctx, &h)?;
    let labels = match &name {
        GroupName::Bundle(path) => bundle_labels(ctx, &h, &kind, path, &recs)?,
        _ => recs
            .iter()
            .map(|r| class_label(&h, &r.representative))
            .collect(),
    };
    let mut r = Report::new(format!("crosscheck {}", a.name))
        .group(&h)
        .columns(&CHECK_COLUMNS);
    let mut seen = Vec::new();
    for (rec, label) in recs.iter().zip(&labels) {
        r.row(record_row(&h, rec, label.as_ref()));
        let rep = &rec.representative;
        let Some(label) = label else {
            r.check(CheckOutcome::failure(
                format!("class of {rep}"),
                "no structural label",
            ));
            continue;
        };
        seen.push(label.clone());
        match verdict(&ClassDescriptor::new(kind, label.clone())) {
            Ok(v) => {
                let mut c = CheckOutcome::new(
                    format!("{label} {rep} centralizes"),
                    v.centralizes.value,
                    rec.centralizes,
                );
                c.expected = format!("{} ({})", v.centralizes.value, v.centralizes.rule);
                c.actual = rec.centralizes.to_string();
                c.pass = v.centralizes.value == rec.centralizes;
                r.check(c);
                let mut c = CheckOutcome::new(
                    format!("{label} {rep} normalizes"),
                    v.normalizes.value,
                    rec.normalizes,
                );
                c.expected = format!("{} ({})", v.normalizes.value, v.normalizes.rule);
                c.actual = rec.normalizes.to_string();
                c.pass = v.normalizes.value == rec.normalizes;
                r.check(c);
            }
            Err(e) => r.check(CheckOutcome::failure(
                format!("{label} {rep}"),
                e.to_string(),
            )),
        }
    }
    seen.sort();
    seen.dedup();
    let mut expected = kind.labels();
    expected.sort();
    let show = |v: &[ClassLabel]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    r.check(CheckOutcome::new(
        "class labels present",
        show(&expected),
        show(&seen),
    ));
    Ok(r)
}

fn parse_partition(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "cannot parse Jordan type {s:?}; expected e.g. J2J2"
        ))
    };
    let mut parts: Vec<usize> = s
        .to_ascii_lowercase()
        .split(['j', '+'])
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    if parts.is_empty() {
        return Err(bad());
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(parts)
}

fn crosscheck_unipotent(ctx: &Context, a: &CrosscheckArgs, u: &str) -> Result<Report, CliError> {
    let GroupName::Sp4(q) = group_name(&a.name)? else {
        return Err(CliError::Usage(
            "--unipotent is supported for Sp4(q) only".into(),
        ));
    };
    let partition = parse_partition(u)?;
    let h = sp4_on_vectors(q)?;
    let recs = records(ctx, &h)?;
    let want = ClassLabel::Jordan(partition.clone());
    let mut echo = format!("crosscheck {} --unipotent {u}", a.name);
    if a.centralizer_orders {
        echo.push_str(" --centralizer-orders");
    }
    let mut r = Report::new(echo).group(&h).columns(&CHECK_COLUMNS);
    let mut orders = Vec::new();
    for rec in &recs {
        if class_label(&h, &rec.representative).as_ref() == Some(&want) {
            r.row(record_row(&h, rec, Some(&want)));
            orders.push(u128::from(rec.centralizer_order));
        }
    }
    if a.centralizer_orders {
        let key: String = partition.iter().map(|p| format!("j{p}")).collect();
        let case: QuotedCase = format!("sp4-{key}").parse()?;
        let mut expected = quoted_centralizer_orders(case, q);
        expected.sort_unstable();
        orders.sort_unstable();
        let show = |v: &[u128]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        r.check(CheckOutcome::new(
            format!("{want} centralizer orders"),
            show(&expected),
            show(&orders),
        ));
    }
    Ok(r)
}

pub fn cmd_gamma_l28(ctx: &Context) -> Result<Report, CliError> {
    let h = construct_cached(&GroupName::PGammaL2(8), ctx.cache.as_ref())?;
    let invs = subgroups::involutions(&h, ctx.cap)?;
    let singletons: Vec<Vec<Permutation>> = invs.iter().map(|t| vec![t.clone()]).collect();
    let inv_classes = subgroups::conjugacy_orbits(&h, &singletons).len();
    let fours = subgroups::four_groups(&invs);
    let four_classes = subgroups::conjugacy_orbits(&h, &fours).len();
    let y = invs
        .first()
        .ok_or_else(|| CliError::Usage("no involutions".into()))?;
    let y_group = subgroups::closure(h.degree(), std::slice::from_ref(y), 2)
        .expect("an involution generates two elements");
    let n_y = subgroups::normalizer_order(&h, &y_group);
    let n_k = subgroups::normalizer_order(&h, &fours[0]);
    let mut p = sylow2_subgroup(&h)?;
    p.sort();
    let n_p = subgroups::normalizer_order(&h, &p);
    let recs = records(ctx, &h)?;
    let meeting = recs.iter().filter(|r| r.normalizes).count();

    let mut r = Report::new("gamma-l28")
        .group(&h)
        .columns(&["quantity", "value"]);
    for (q, v) in [
        ("involution classes", inv_classes.to_string()),
        ("four-group classes", four_classes.to_string()),
        ("|N(<y>)|", n_y.to_string()),
        ("|N(K)|", n_k.to_string()),
        ("|N(P)|", n_p.to_string()),
        ("order-3 classes", recs.len().to_string()),
        (
            "order-3 classes normalizing a 2-subgroup",
            meeting.to_string(),
        ),
    ] {
        r.row(vec![q.to_string(), v]);
    }
    r.check(CheckOutcome::new("involution classes", 1, inv_classes));
    r.check(CheckOutcome::new("four-group classes", 1, four_classes));
    r.check(CheckOutcome::new("|N(K)|", 24, n_k));
    r.check(CheckOutcome::new("|N(P)|", 168, n_p));
    r.check(CheckOutcome::new(
        format!("|N(<y>)| = {n_y} prime to 3"),
        true,
        n_y % 3 != 0,
    ));
    Ok(r)
}

/// `O_3(G)` is trivial iff no class of order-3 elements generates a 3-group.
fn o3_trivial(handle: &GroupHandle, recs: &[ClassRecord], cap: u64) -> Result<bool, CliError> {
    let three_part = {
        let mut n = handle.order();
        let mut t = 1u128;
        while n % 3 == 0 {
            n /= 3;
            t *= 3;
        }
        t
    };
    for rec in recs {
        let class = conjugation_orbit(
            handle.chain(),
            handle.generators(),
            &rec.representative,
            usize::MAX,
            cap,
        )?
        .members
        .expect("small classes are materialized");
        if subgroups::closure(handle.degree(), &class, three_part as usize)
            .is_some_and(|s| s.len() > 1)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Classes of subgroups of order 3: records whose representatives' inverses
/// fall in an earlier record's class are merged.
fn order3_subgroup_classes(
    handle: &GroupHandle,
    recs: &[ClassRecord],
    cap: u64,
) -> Result<usize, CliError> {
    let mut merged = vec![false; recs.len()];
    let mut count = 0;
    for i in 0..recs.len() {
        if merged[i] {
            continue;
        }
        count += 1;
        let inv = recs[i].representative.inverse();
        for j in i + 1..recs.len() {
            if !merged[j] && conjugate_in(handle, &recs[j].representative, &inv, cap)? {
                merged[j] = true;
            }
        }
    }
    Ok(count)
}

pub fn cmd_counterexamples(ctx: &Context) -> Result<Report, CliError> {
    let mut r = Report::new("counterexamples").columns(&["group", "quantity", "value"]);
    let f = construct_cached(&GroupName::FrobA4, ctx.cache.as_ref())?;
    let recs = records(ctx, &f)?;
    let o3 = o3_trivial(&f, &recs, ctx.cap)?;
    let subgroup_classes = order3_subgroup_classes(&f, &recs, ctx.cap)?;
    let all_normalize = recs.iter().all(|x| x.normalizes);
    let witness_orders: Vec<String> = recs
        .iter()
        .map(|x| opt(&x.normalizer_witness.as_ref().map(|w| w.two_group_order)))
        .collect();
    let fname = f.name().to_string();
    for (q, v) in [
        ("order", f.order().to_string()),
        ("O3 trivial", o3.to_string()),
        ("order-3 element classes", recs.len().to_string()),
        ("order-3 subgroup classes", subgroup_classes.to_string()),
        (
            "every order-3 class normalizes a 2-subgroup",
            all_normalize.to_string(),
        ),
        ("normalized 2-subgroup orders", witness_orders.join(" ")),
    ] {
        r.row(vec![fname.clone(), q.to_string(), v]);
    }
    r.check(CheckOutcome::new("FrobA4 O3 trivial", true, o3));
    r.check(CheckOutcome::new(
        "FrobA4 order-3 subgroup classes",
        1,
        subgroup_classes,
    ));
    r.check(CheckOutcome::new(
        "FrobA4 order-3 class normalizes a 2-subgroup",
        true,
        all_normalize,
    ));
    r.check(CheckOutcome::new(
        "FrobA4 normalized 2-subgroup is a four-group",
        true,
        recs.iter().all(|x| {
            x.normalizer_witness
                .as_ref()
                .is_some_and(|w| w.two_group_order == 4)
        }),
    ));

    let w = construct(&GroupName::WreathPsl2Sym2(16))?;
    let (y, s) = wreath_diagonal_and_swap(&w)?;
    let commute = y.commutes_with(&s);
    let wname = w.name().to_string();
    for (q, v) in [
        ("order", w.order().to_string()),
        (
            "y = (x, x)",
            y.to_string().chars().take(60).collect::<String>() + "...",
        ),
        ("order of y", y.order().to_string()),
        ("order of swap", s.order().to_string()),
        ("y commutes with swap", commute.to_string()),
    ] {
        r.row(vec![wname.clone(), q.to_string(), v]);
    }
    r.check(CheckOutcome::new("wreath y has order 3", 3, y.order()));
    r.check(CheckOutcome::new(
        "wreath swap is an involution",
        2,
        s.order(),
    ));
    r.check(CheckOutcome::new(
        "wreath y commutes with the swap",
        true,
        commute,
    ));
    Ok(r)
}

pub fn cmd_robinson(
    ctx: &Context,
    name: &str,
    degrees: &std::path::Path,
) -> Result<Report, CliError> {
    let data = DegreeData::read(degrees)?;
    let h = construct_cached(&group_name(name)?, ctx.cache.as_ref())?;
    let b = check_bound(&h, &data, ctx.cap)?;
    let mut r = Report::new(format!("robinson {name} {}", degrees.display()))
        .group(&h)
        .columns(&["lower bound", "blocks of defect zero", "bound holds"]);
    r.row(vec![
        b.lower_bound.to_string(),
        b.defect_zero_blocks.to_string(),
        b.pass.to_string(),
    ]);
    r.check(CheckOutcome::new(
        format!("{} <= {}", b.lower_bound, b.defect_zero_blocks),
        true,
        b.pass,
    ));
    Ok(r)
}

pub fn cmd_table1(qmax: u64, format: TableFormat) -> Result<String, CliError> {
    Ok(render_table(&emit_exception_tables(qmax)?, format))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_from_args(
            std::iter::once("order3").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn construct_and_exclusion() {
        let (code, out) = run(&["construct", "PSL(3,4)"]);
        assert_eq!(code, 0);
        assert!(out.contains("order 20160"), "{out}");
        let (code, out) = run(&["construct", "Sp4(2)"]);
        assert_eq!(code, 0);
        assert!(out.contains("excluded (the group is not simple"), "{out}");
        assert_eq!(run(&["construct", "PSL(3,6)"]).0, 2);
    }

    #[test]
    fn check_psl28() {
        let (code, out) = run(&["--format", "json", "check", "PSL(2,8)"]);
        assert_eq!(code, 0);
        let r = Report::from_json(&out).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(&r.rows[0][3..5], ["9", "false"]);
        assert_eq!(r.rows[0][6], "false");
    }

    #[test]
    fn predict_examples() {
        let (code, out) = run(&[
            "--format", "csv", "predict", "--family", "PSL2", "--q", "32",
        ]);
        assert_eq!(code, 0);
        assert!(
            out.contains("PSL2(32),unique,false,psl2-even-q,false,"),
            "{out}"
        );
        let (_, out) = run(&[
            "--format", "csv", "predict", "--family", "2G2", "--qsq", "27", "--class", "A1t3",
        ]);
        assert!(out.contains(",false,ree-A1t3,false"), "{out}");
        let (_, out) = run(&[
            "--format", "csv", "predict", "--family", "Alt", "--n", "11", "--type", "(123)",
        ]);
        assert!(out.contains("Alt(11),(1 2 3),true,"), "{out}");
        assert_eq!(run(&["predict", "--family", "Sp4", "--q", "2"]).0, 2);
        assert_eq!(run(&["predict", "--family", "PSL2"]).0, 2);
    }

    #[test]
    fn crosscheck_small() {
        for name in ["PSL(2,8)", "PSL(2,9)", "PGL(3,4)", "Alt(7)"] {
            let (code, out) = run(&["crosscheck", name]);
            assert_eq!(code, 0, "{out}");
        }
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["check"]).0, 2);
        assert_eq!(run(&["--cap", "100", "check", "PSL(2,8)"]).0, 2);
    }
}
