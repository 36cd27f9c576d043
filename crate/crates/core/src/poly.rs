//! Univariate polynomials over Q, coefficients stored from the constant term up.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    c: Vec<Scalar>,
}

impl QPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| scalar::int(x)).collect())
    }

    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly { c: vec![Scalar::one()] }
    }

    /// `x - a`
    pub fn linear(a: &Scalar) -> Self {
        QPoly { c: vec![-a, Scalar::one()] }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.c.iter().rev().fold(Scalar::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + scalar::to_f64(a))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c.iter().enumerate().skip(1).map(|(i, a)| a * scalar::int(i as i64)).collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        Self::new(self.c.iter().map(|a| a / &l).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Scalar::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.c.len().max(other.c.len());
        let z = Scalar::zero();
        QPoly::new(
            (0..n).map(|i| self.c.get(i).unwrap_or(&z) - other.c.get(i).unwrap_or(&z)).collect(),
        )
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.c.len().max(other.c.len());
        let z = Scalar::zero();
        QPoly::new(
            (0..n).map(|i| self.c.get(i).unwrap_or(&z) + other.c.get(i).unwrap_or(&z)).collect(),
        )
    }

    pub fn scale(&self, k: &Scalar) -> QPoly {
        QPoly::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn pow(&self, k: u32) -> QPoly {
        (0..k).fold(QPoly::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        let dl = d.leading();
        let dd = d.degree();
        if r.len() < d.c.len() {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &dl;
            if !f.is_zero() {
                for (j, a) in d.c.iter().enumerate() {
                    r[k + j] -= &f * a;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn integer_coeffs(&self) -> Vec<BigInt> {
        let l = self.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        self.c.iter().map(|a| (a * Scalar::from(l.clone())).to_integer()).collect()
    }

    /// All rational roots with multiplicity, sorted increasingly.
    ///
    /// Candidates come from the rational root theorem, so the cost grows with
    /// the number of divisors of the extreme coefficients.
    pub fn rational_roots(&self) -> Vec<(Scalar, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let mut p = self.clone();
        let mut zero_mult = 0;
        while p.c.first().is_some_and(Zero::is_zero) {
            p.c.remove(0);
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Scalar::zero(), zero_mult));
        }
        let ic = p.integer_coeffs();
        let a0 = ic[0].abs();
        let an = ic[ic.len() - 1].abs();
        let mut cands = Vec::new();
        if p.degree() > 0 {
            for num in divisors(&a0) {
                for den in divisors(&an) {
                    let r = Scalar::new(num.clone(), den);
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            let lin = QPoly::linear(&r);
            let mut m = 0;
            loop {
                let (q, rem) = p.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                p = q;
                m += 1;
            }
            if m > 0 {
                out.push((r, m));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Number of distinct real roots, by a Sturm sequence.
    pub fn real_root_count(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let p = self.squarefree_part();
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(QPoly::new(r.c.iter().map(|a| -a).collect()));
        }
        let changes = |signs: Vec<i8>| {
            let s: Vec<i8> = signs.into_iter().filter(|&x| x != 0).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let sign = |a: &Scalar| -> i8 {
            if a.is_positive() {
                1
            } else if a.is_negative() {
                -1
            } else {
                0
            }
        };
        let at_pos: Vec<i8> = seq.iter().map(|q| sign(&q.leading())).collect();
        let at_neg: Vec<i8> = seq
            .iter()
            .map(|q| sign(&q.leading()) * if q.degree() % 2 == 1 { -1 } else { 1 })
            .collect();
        changes(at_neg) - changes(at_pos)
    }
}

/// Positive divisors of `|n|`, with `divisors(0) = [1]`.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() || n.is_one() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = scalar::format(&mag);
            match i {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !mag.is_one() {
                        f.write_str(&coeff)?;
                    }
                    f.write_str("x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}
