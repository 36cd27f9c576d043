//! Parameter samples for the table families: a fixed canonical grid and
//! seeded random rationals with small denominators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::table::{check_params, entry, params, split_name, Params};
use crate::error::Result;
use crate::scalar::{int, q, Scalar};

pub const MAX_DENOMINATOR: i64 = 12;

/// The parameter values singled out in the classification and lattice
/// discussions, plus a few generic ones.
pub fn canonical(name: &str) -> Result<Vec<Params>> {
    entry(name)?;
    let one = |k: &str, vals: &[Scalar]| vals.iter().map(|v| params(&[(k, v.clone())])).collect::<Vec<_>>();
    let out = match split_name(name).0 {
        "g_{4.5}" => one("p", &[q(-1, 2), q(-1, 3), q(-1, 4)]),
        "g_{4.6}" => one("p", &[q(1, 3), int(1)]),
        "g_{5.7}" => [(q(1, 3), q(1, 3), q(1, 3)), (int(-1), int(1), int(1)), (q(-1, 2), q(1, 2), int(1)),
            (q(1, 4), q(1, 4), q(1, 2)), (q(-1, 3), q(2, 3), q(2, 3))]
            .into_iter()
            .map(|(p, qq, r)| params(&[("p", p), ("q", qq), ("r", r)]))
            .collect(),
        "g_{5.9}" => one("p", &[int(-1), q(1, 2)]),
        "g_{5.13}" => [(q(-1, 3), int(1)), (int(-1), int(1)), (q(-1, 4), int(2)), (int(0), int(1))]
            .into_iter()
            .map(|(qq, r)| params(&[("q", qq), ("r", r)]))
            .collect(),
        "g_{5.16}" => one("q", &[int(1), q(1, 2)]),
        "g_{5.17}" => [(int(1), int(1)), (q(1, 2), int(2))]
            .into_iter()
            .map(|(p, r)| params(&[("p", p), ("r", r)]))
            .collect(),
        "g_{5.19}" => one("p", &[int(0), int(1), q(-1, 2)]),
        "g_{5.25}" => one("p", &[int(1), q(1, 2)]),
        _ => vec![Params::new()],
    };
    for p in &out {
        check_params(name, p)?;
    }
    Ok(out)
}

fn rat(rng: &mut ChaCha8Rng, d: i64, lo: i64, hi: i64) -> Scalar {
    q(rng.gen_range(lo..=hi), d)
}

fn one_sample(base: &str, rng: &mut ChaCha8Rng) -> Params {
    let d = rng.gen_range(1..=MAX_DENOMINATOR);
    match base {
        "g_{4.5}" => {
            // -1/2 <= p < 0
            let a = rng.gen_range(1..=(d / 2).max(1));
            let p = if 2 * a > d { q(-1, 2) } else { q(-a, d) };
            params(&[("p", p)])
        }
        "g_{4.6}" | "g_{5.16}" | "g_{5.25}" => {
            let k = if base == "g_{5.16}" { "q" } else { "p" };
            params(&[(k, rat(rng, d, 1, 3 * d))])
        }
        "g_{5.7}" => loop {
            let d = rng.gen_range(1..=MAX_DENOMINATOR);
            let mut v = [rng.gen_range(-d..=d), rng.gen_range(-d..=d), 0];
            v[2] = d - v[0] - v[1];
            v.sort();
            if v.iter().all(|&x| x != 0 && x.abs() <= d) {
                break params(&[("p", q(v[0], d)), ("q", q(v[1], d)), ("r", q(v[2], d))]);
            }
        },
        "g_{5.9}" => params(&[("p", rat(rng, d, -d, 3 * d))]),
        "g_{5.13}" => loop {
            let qq = rat(rng, d, -d, 0);
            if qq != q(-1, 2) {
                break params(&[("q", qq), ("r", rat(rng, d, 1, 3 * d))]);
            }
        },
        "g_{5.17}" => params(&[("p", rat(rng, d, 1, 3 * d)), ("r", rat(rng, d, 1, 3 * d))]),
        "g_{5.19}" => loop {
            let p = rat(rng, d, -3 * d, 3 * d);
            if p != int(-1) {
                break params(&[("p", p)]);
            }
        },
        _ => Params::new(),
    }
}

/// `count` admissible random parameter sets for a row. Rows without free
/// parameters yield nothing.
pub fn random(name: &str, seed: u64, count: usize) -> Result<Vec<Params>> {
    let e = entry(name)?;
    if e.params.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = split_name(name).0;
    let out: Vec<Params> = (0..count).map(|_| one_sample(base, &mut rng)).collect();
    for p in &out {
        check_params(name, p)?;
    }
    Ok(out)
}
