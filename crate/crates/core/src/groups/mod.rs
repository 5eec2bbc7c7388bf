//! Named constructors for the groups studied here, generator bundles for
//! anything else, and an on-disk cache for stabilizer chains and class data.

mod bundle;
mod cache;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{gcd, prime_power, FieldError};
use crate::lie::{Family, GroupKind};
use crate::matrix::{
    frobenius_twist_perm, gl_generators, gu_generators, sl_generators, sl_order, sp4_generators,
    sp4_order, su_generators, su_order, FormKind, LinearAction, Matrix, MatrixError, PointSpace,
};
use crate::perm::{GroupHandle, GroupInfo, PermError, Permutation};

pub use bundle::{ingest_bundle, parse_bundle, Bundle, BundleClass};
pub use cache::{Cache, CacheError, CACHE_ENV, CACHE_VERSION};

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("cannot parse group name {0:?}")]
    Parse(String),
    #[error("unsupported group {0}")]
    Unsupported(String),
    #[error("{name} has {points} points, above the degree cap of 65535")]
    TooLarge { name: String, points: u64 },
    #[error("computed order {computed} differs from the claimed order {claimed}")]
    OrderMismatch { computed: u128, claimed: u128 },
    #[error("bundle {path}: {msg}")]
    Bundle { path: String, msg: String },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

/// A group this crate can build.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupName {
    Alt(usize),
    Sym(usize),
    PSL(usize, u64),
    PGL(usize, u64),
    PSU(usize, u64),
    PGU(usize, u64),
    /// The projective symplectic group PSp4(q) on projective points.
    Sp4(u64),
    PGammaL2(u64),
    /// `GF(5)^2 : Alt4`, with Alt4 acting through its quotient of order 3.
    FrobA4,
    /// `PSL2(16) wr Sym2` on two copies of the projective line.
    WreathPsl2Sym2(u64),
    Bundle(PathBuf),
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Alt(n) => write!(f, "Alt({n})"),
            GroupName::Sym(n) => write!(f, "Sym({n})"),
            GroupName::PSL(n, q) => write!(f, "PSL({n},{q})"),
            GroupName::PGL(n, q) => write!(f, "PGL({n},{q})"),
            GroupName::PSU(n, q) => write!(f, "PSU({n},{q})"),
            GroupName::PGU(n, q) => write!(f, "PGU({n},{q})"),
            GroupName::Sp4(q) => write!(f, "Sp4({q})"),
            GroupName::PGammaL2(q) => write!(f, "PGammaL2({q})"),
            GroupName::FrobA4 => write!(f, "FrobA4"),
            GroupName::WreathPsl2Sym2(q) => write!(f, "Wreath(PSL2({q}),Sym2)"),
            GroupName::Bundle(p) => write!(f, "Bundle({})", p.display()),
        }
    }
}

fn split_call(s: &str) -> Option<(&str, &str)> {
    let open = s.find('(')?;
    let inner = s[open + 1..].strip_suffix(')')?;
    Some((&s[..open], inner))
}

impl FromStr for GroupName {
    type Err = GroupError;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::Parse(raw.to_string());
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if s.eq_ignore_ascii_case("FrobA4") {
            return Ok(GroupName::FrobA4);
        }
        if let Some(path) = raw
            .trim()
            .strip_prefix("Bundle(")
            .and_then(|r| r.strip_suffix(')'))
        {
            return Ok(GroupName::Bundle(PathBuf::from(path.trim())));
        }
        let (head, inner) = split_call(&s).ok_or_else(bad)?;
        let nums = || -> Result<Vec<u64>, GroupError> {
            inner
                .split(',')
                .map(|x| x.parse::<u64>().map_err(|_| bad()))
                .collect()
        };
        let one = || -> Result<u64, GroupError> {
            match nums()?.as_slice() {
                [x] => Ok(*x),
                _ => Err(bad()),
            }
        };
        let two = || -> Result<(usize, u64), GroupError> {
            match nums()?.as_slice() {
                [n, q] => Ok((*n as usize, *q)),
                _ => Err(bad()),
            }
        };
        let name = match head.to_ascii_lowercase().as_str() {
            "alt" => GroupName::Alt(one()? as usize),
            "sym" => GroupName::Sym(one()? as usize),
            "psl" => {
                let (n, q) = two()?;
                GroupName::PSL(n, q)
            }
            "pgl" => {
                let (n, q) = two()?;
                GroupName::PGL(n, q)
            }
            "psu" => {
                let (n, q) = two()?;
                GroupName::PSU(n, q)
            }
            "pgu" => {
                let (n, q) = two()?;
                GroupName::PGU(n, q)
            }
            "psl2" => GroupName::PSL(2, one()?),
            "psl3" => GroupName::PSL(3, one()?),
            "psl4" => GroupName::PSL(4, one()?),
            "psu3" => GroupName::PSU(3, one()?),
            "psu4" => GroupName::PSU(4, one()?),
            "pgl3" => GroupName::PGL(3, one()?),
            "pgu3" => GroupName::PGU(3, one()?),
            "sp4" | "psp4" => GroupName::Sp4(one()?),
            "pgammal2" => GroupName::PGammaL2(one()?),
            "wreath" => {
                let lower = inner.to_ascii_lowercase();
                let rest = lower.strip_prefix("psl2(").ok_or_else(bad)?;
                let (q, tail) = rest.split_once(')').ok_or_else(bad)?;
                if tail != ",sym2" {
                    return Err(bad());
                }
                GroupName::WreathPsl2Sym2(q.parse().map_err(|_| bad())?)
            }
            _ => return Err(bad()),
        };
        Ok(name)
    }
}

impl GroupName {
    /// The symbolic family, when the group is one of the classified rows.
    pub fn kind(&self) -> Option<GroupKind> {
        let fam = match self {
            GroupName::Alt(_) => Family::Alt,
            GroupName::Sym(_) => Family::Sym,
            GroupName::PSL(2, _) => Family::PSL2,
            GroupName::PSL(3, _) => Family::PSL3,
            GroupName::PSL(4, _) => Family::PSL4,
            GroupName::PSU(3, _) => Family::PSU3,
            GroupName::PSU(4, _) => Family::PSU4,
            GroupName::PGL(3, _) => Family::PGL3,
            GroupName::PGU(3, _) => Family::PGU3,
            GroupName::Sp4(_) => Family::Sp4,
            _ => return None,
        };
        let param = match self {
            GroupName::Alt(n) | GroupName::Sym(n) => *n as u64,
            GroupName::PSL(_, q)
            | GroupName::PSU(_, q)
            | GroupName::PGL(_, q)
            | GroupName::PGU(_, q) => *q,
            GroupName::Sp4(q) => *q,
            _ => unreachable!(),
        };
        GroupKind::new(fam, param).ok()
    }

    /// Order predicted by the classical formulas, when one applies.
    pub fn expected_order(&self) -> Option<u128> {
        let d = |a: u64, b: u64| u128::from(gcd(a, b));
        Some(match *self {
            GroupName::Alt(n) => (1..=n as u128).product::<u128>() / 2,
            GroupName::Sym(n) => (1..=n as u128).product(),
            GroupName::PSL(n, q) => sl_order(n as u32, q) / d(n as u64, q - 1),
            GroupName::PGL(n, q) => sl_order(n as u32, q),
            GroupName::PSU(n, q) => su_order(n as u32, q) / d(n as u64, q + 1),
            GroupName::PGU(n, q) => su_order(n as u32, q),
            GroupName::Sp4(q) => sp4_order(q) / d(2, q - 1),
            GroupName::PGammaL2(q) => {
                let (_, k) = prime_power(q)?;
                sl_order(2, q) / d(2, q - 1) * u128::from(k)
            }
            GroupName::FrobA4 => 300,
            GroupName::WreathPsl2Sym2(q) => {
                let p = sl_order(2, q) / d(2, q - 1);
                2 * p * p
            }
            GroupName::Bundle(_) => return None,
        })
    }
}

fn perm(cycles: &[&[usize]], degree: usize) -> Permutation {
    Permutation::from_cycles(degree, cycles).expect("valid cycles")
}

fn alt_sym_generators(n: usize, sym: bool) -> Result<Vec<Permutation>, GroupError> {
    if n < 2 {
        return Err(GroupError::Unsupported(format!("degree {n}")));
    }
    if n > 65535 {
        return Err(GroupError::TooLarge {
            name: format!("degree-{n} group"),
            points: n as u64,
        });
    }
    let all: Vec<usize> = (0..n).collect();
    if sym {
        return Ok(vec![perm(&[&[0, 1]], n), perm(&[&all], n)]);
    }
    if n < 3 {
        return Ok(Vec::new());
    }
    // (0 1 2) with an n-cycle (n odd) or an (n-1)-cycle on 1..n (n even).
    let long: &[usize] = if n % 2 == 1 { &all } else { &all[1..] };
    Ok(vec![perm(&[&[0, 1, 2]], n), perm(&[long], n)])
}

fn check_points(name: &GroupName, field_order: u64, n: usize) -> Result<(), GroupError> {
    let points = field_order.checked_pow(n as u32).unwrap_or(u64::MAX);
    if points > 1 << 24 {
        return Err(GroupError::TooLarge {
            name: name.to_string(),
            points,
        });
    }
    Ok(())
}

fn matrix_perms(action: &LinearAction, mats: &[Matrix]) -> Result<Vec<Permutation>, GroupError> {
    if action.degree() > 65535 {
        return Err(GroupError::TooLarge {
            name: format!("{:?}", action),
            points: action.degree() as u64,
        });
    }
    mats.iter()
        .map(|m| action.perm_of(m).map_err(GroupError::from))
        .collect()
}

/// Generators of a matrix family on its point set, together with the action.
fn linear_group(name: &GroupName) -> Result<(Vec<Permutation>, Arc<LinearAction>), GroupError> {
    let (kind, space, n, q, mats) = match *name {
        GroupName::PSL(n, q) => (
            FormKind::Linear,
            PointSpace::Projective,
            n,
            q,
            sl_generators(n, q)?,
        ),
        GroupName::PGL(n, q) => (
            FormKind::Linear,
            PointSpace::Projective,
            n,
            q,
            gl_generators(n, q)?,
        ),
        GroupName::PSU(n, q) => (
            FormKind::Unitary,
            PointSpace::IsotropicProjective,
            n,
            q,
            su_generators(n, q)?,
        ),
        GroupName::PGU(n, q) => (
            FormKind::Unitary,
            PointSpace::IsotropicProjective,
            n,
            q,
            gu_generators(n, q)?,
        ),
        GroupName::Sp4(q) => (
            FormKind::Symplectic,
            PointSpace::Projective,
            4,
            q,
            sp4_generators(q)?,
        ),
        _ => unreachable!("not a matrix family"),
    };
    let field = mats[0].field().clone();
    check_points(name, u64::from(field.order()), n)?;
    let action = LinearAction::new(kind, space, n, q, &field);
    let gens = matrix_perms(&action, &mats)?;
    Ok((gens, Arc::new(action)))
}

/// The matrix group Sp4(q) acting on the nonzero vectors of GF(q)^4, so that
/// centralizer orders are those of the linear group rather than PSp4(q).
pub fn sp4_on_vectors(q: u64) -> Result<GroupHandle, GroupError> {
    let mats = sp4_generators(q)?;
    let field = mats[0].field().clone();
    check_points(&GroupName::Sp4(q), u64::from(field.order()), 4)?;
    let action = LinearAction::new(FormKind::Symplectic, PointSpace::Vectors, 4, q, &field);
    let gens = matrix_perms(&action, &mats)?;
    let info = GroupInfo {
        linear: Some(Arc::new(action)),
        ..GroupInfo::default()
    };
    let handle = GroupHandle::new(format!("Sp4({q}) on vectors"), gens[0].degree(), gens, info)?;
    verify_order(&handle, sp4_order(q))?;
    Ok(handle)
}

fn verify_order(handle: &GroupHandle, expected: u128) -> Result<(), GroupError> {
    if handle.order() != expected {
        return Err(GroupError::OrderMismatch {
            computed: handle.order(),
            claimed: expected,
        });
    }
    Ok(())
}

/// Generators, degree and metadata for a named group, without a chain.
pub fn generators_of(name: &GroupName) -> Result<(usize, Vec<Permutation>, GroupInfo), GroupError> {
    let mut info = GroupInfo {
        kind: name.kind(),
        ..GroupInfo::default()
    };
    info.excluded = info.kind.and_then(|k| k.exclusion()).map(str::to_string);
    let validate_q = |q: u64| -> Result<(), GroupError> {
        prime_power(q)
            .ok_or_else(|| GroupError::Unsupported(format!("{name}: {q} is not a prime power")))?;
        Ok(())
    };
    let (degree, gens) = match name {
        GroupName::Alt(n) | GroupName::Sym(n) => {
            info.natural = true;
            let gens = alt_sym_generators(*n, matches!(name, GroupName::Sym(_)))?;
            (*n, gens)
        }
        GroupName::PSL(n, q)
        | GroupName::PGL(n, q)
        | GroupName::PSU(n, q)
        | GroupName::PGU(n, q) => {
            validate_q(*q)?;
            let allowed: &[usize] = match name {
                GroupName::PSU(..) | GroupName::PGU(..) => &[3, 4],
                _ => &[2, 3, 4],
            };
            if !allowed.contains(n) {
                return Err(GroupError::Unsupported(name.to_string()));
            }
            let (gens, action) = linear_group(name)?;
            let d = action.degree();
            info.linear = Some(action);
            (d, gens)
        }
        GroupName::Sp4(q) => {
            validate_q(*q)?;
            let (gens, action) = linear_group(name)?;
            let d = action.degree();
            info.linear = Some(action);
            (d, gens)
        }
        GroupName::PGammaL2(q) => {
            let (mut gens, action) = linear_group(&GroupName::PSL(2, *q))?;
            gens.push(frobenius_twist_perm(*q)?);
            (action.degree(), gens)
        }
        GroupName::FrobA4 => (29, frob_a4_generators()),
        GroupName::WreathPsl2Sym2(q) => {
            validate_q(*q)?;
            let (gens, action) = linear_group(&GroupName::PSL(2, *q))?;
            let m = action.degree();
            (2 * m, wreath_generators(&gens, m))
        }
        GroupName::Bundle(_) => {
            return Err(GroupError::Unsupported(
                "bundles are read by ingest_bundle".into(),
            ))
        }
    };
    Ok((degree, gens, info))
}

/// Builds and verifies a named group.
pub fn construct(name: &GroupName) -> Result<GroupHandle, GroupError> {
    if let GroupName::Bundle(path) = name {
        return ingest_bundle(path);
    }
    let (degree, gens, info) = generators_of(name)?;
    let handle = GroupHandle::new(name.to_string(), degree, gens, info)?;
    if let Some(expected) = name.expected_order() {
        verify_order(&handle, expected)?;
    }
    if let GroupName::WreathPsl2Sym2(_) = name {
        let (y, s) = wreath_diagonal_and_swap(&handle)?;
        if !y.commutes_with(&s) {
            return Err(GroupError::Unsupported(
                "diagonal element does not commute with the swap".into(),
            ));
        }
    }
    Ok(handle)
}

/// As [`construct`], reusing a cached chain when one is present.
pub fn construct_cached(
    name: &GroupName,
    cache: Option<&Cache>,
) -> Result<GroupHandle, GroupError> {
    let Some(cache) = cache else {
        return construct(name);
    };
    if let GroupName::Bundle(path) = name {
        // Bundles are cheap to re-read; the cache key covers the file contents.
        let b = bundle::read_bundle(path)?;
        let key = cache.key_for(&format!("bundle:{}", b.digest()));
        if let Some(chain) = cache.load_chain(&key)? {
            return b.to_handle_with(chain);
        }
        let h = b.to_handle()?;
        cache.store_chain(&key, h.chain())?;
        return Ok(h);
    }
    let key = cache.key_for(&name.to_string());
    let (degree, gens, info) = generators_of(name)?;
    if let Some(chain) = cache.load_chain(&key)? {
        if chain.degree() == degree {
            if let Ok(h) =
                GroupHandle::with_chain(name.to_string(), gens.clone(), chain, info.clone())
            {
                if name.expected_order().map_or(true, |o| o == h.order()) {
                    return Ok(h);
                }
            }
        }
    }
    let h = construct(name)?;
    cache.store_chain(&key, h.chain())?;
    Ok(h)
}

/// `GF(5)^2 : Alt4` on 25 vectors plus the 4 points Alt4 permutes. Alt4 acts
/// on the vectors through `Alt4 -> Alt4/V4`, the 3-cycle by `[[0,1],[-1,-1]]`.
fn frob_a4_generators() -> Vec<Permutation> {
    let code = |a: usize, b: usize| 5 * (a % 5) + b % 5;
    let vec_perm = |f: &dyn Fn(usize, usize) -> (usize, usize), extra: &[usize]| {
        let mut img = Vec::with_capacity(29);
        for v in 0..25 {
            let (a, b) = f(v / 5, v % 5);
            img.push(code(a, b));
        }
        img.extend(extra.iter().map(|&x| x + 25));
        Permutation::from_images(img).expect("affine maps are bijections")
    };
    vec![
        vec_perm(&|a, b| (a + 1, b), &[0, 1, 2, 3]),
        vec_perm(&|a, b| (a, b + 1), &[0, 1, 2, 3]),
        // (a, b) -> (a, b) M with M = [[0, 1], [-1, -1]]: (a, b) -> (-b, a - b).
        vec_perm(&|a, b| (5 - b, a + 5 - b), &[1, 2, 0, 3]),
        vec_perm(&|a, b| (a, b), &[1, 0, 3, 2]),
    ]
}

fn wreath_generators(base: &[Permutation], m: usize) -> Vec<Permutation> {
    let mut gens = Vec::new();
    for g in base {
        let img: Vec<usize> = (0..m).map(|i| g.image(i)).chain(m..2 * m).collect();
        gens.push(Permutation::from_images(img).unwrap());
    }
    let swap: Vec<usize> = (m..2 * m).chain(0..m).collect();
    gens.push(Permutation::from_images(swap).unwrap());
    gens
}

/// The swap involution `s` and `y = (x, x)` for the first order-3 element `x`
/// of the first copy, found among short words in the copy's generators.
pub fn wreath_diagonal_and_swap(
    handle: &GroupHandle,
) -> Result<(Permutation, Permutation), GroupError> {
    let gens = handle.generators();
    let s = gens
        .last()
        .expect("wreath generators end with the swap")
        .clone();
    let m = handle.degree() / 2;
    let first: Vec<Permutation> = gens[..gens.len() - 1].to_vec();
    let x = order3_in(&first)
        .ok_or_else(|| GroupError::Unsupported("no order-3 element found".into()))?;
    let img: Vec<usize> = (0..m)
        .map(|i| x.image(i))
        .chain((0..m).map(|i| x.image(i) + m))
        .collect();
    Ok((Permutation::from_images(img)?, s))
}

/// An order-3 power of some product of at most two generators.
fn order3_in(gens: &[Permutation]) -> Option<Permutation> {
    let mut words: Vec<Permutation> = gens.to_vec();
    for a in gens {
        for b in gens {
            words.push(a.compose(b).ok()?);
        }
    }
    words.into_iter().find_map(|w| {
        let o = w.order();
        (o % 3 == 0).then(|| w.pow(o / 3))
    })
}
