//! Generates the centralizer table for order-3 classes of Alt(n), 5 <= n <= 12.
//!
//! For every cycle type (f fixed points, c three-cycles) the canonical element
//! `(0 1 2)(3 4 5)...` is tested against every even involution of Sym(n),
//! enumerated directly as sets of disjoint transpositions.

use std::env;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, start: usize, swaps: usize, out: &mut Vec<Vec<usize>>) {
        if swaps > 0 && swaps % 2 == 0 {
            out.push(cur.clone());
        }
        for a in start..n {
            if cur[a] != a {
                continue;
            }
            for b in a + 1..n {
                if cur[b] != b {
                    continue;
                }
                cur.swap(a, b);
                rec(n, cur, a + 1, swaps + 1, out);
                cur.swap(a, b);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    rec(n, &mut cur, 0, 0, &mut out);
    out
}

fn main() {
    println!("cargo:rerun-if-changed=build.rs");
    let mut src = String::from("/// (n, fixed points, three-cycles, centralizes an involution)\n");
    src.push_str("pub(crate) const ALT_TABLE: &[(usize, usize, usize, bool)] = &[\n");
    for n in 5..=12usize {
        let invs = involutions(n);
        for c in 1..=n / 3 {
            let f = n - 3 * c;
            let mut x: Vec<usize> = (0..n).collect();
            for k in 0..c {
                x[3 * k] = 3 * k + 1;
                x[3 * k + 1] = 3 * k + 2;
                x[3 * k + 2] = 3 * k;
            }
            let hit = invs.iter().any(|t| (0..n).all(|i| t[x[i]] == x[t[i]]));
            writeln!(src, "    ({n}, {f}, {c}, {hit}),").unwrap();
        }
    }
    src.push_str("];\n");
    let out = Path::new(&env::var("OUT_DIR").unwrap()).join("alt_table.rs");
    fs::write(out, src).unwrap();
}
