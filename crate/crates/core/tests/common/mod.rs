//! Reference arithmetic for the integration tests, written independently of
//! the library: `i128` pairs `(a, b)` for `a + b beta`, and a greedy
//! algorithm with a linear digit scan.

#![allow(dead_code)]

use std::cmp::Ordering;

use betanum::{DigitString, FinElem, Params};

#[derive(Clone, Debug)]
pub struct Oracle {
    p: i128,
    q: i128,
    powers: Vec<Pair>,
}

pub type Pair = (i128, i128);

impl Oracle {
    pub fn new(params: &Params) -> Self {
        let (p, q) = (i128::from(params.p()), i128::from(params.q()));
        // Powers small enough that `sign` can square them without overflow.
        let mut powers: Vec<Pair> = vec![(1, 0)];
        loop {
            let (a, b) = *powers.last().unwrap();
            if b.abs() > 1 << 52 {
                break;
            }
            powers.push((-b * (p - q), a + b * (p + 1)));
        }
        Oracle { p, q, powers }
    }

    /// `beta (a + b beta) = -b(p-q) + (a + b(p+1)) beta`.
    pub fn times_beta(&self, (a, b): Pair) -> Pair {
        (-b * (self.p - self.q), a + b * (self.p + 1))
    }

    pub fn power(&self, k: u32) -> Pair {
        self.powers[k as usize]
    }

    /// Sign of `a + b beta` via `(2a + b(p+1))^2` against `b^2 D`.
    pub fn sign(&self, (a, b): Pair) -> Ordering {
        let u = 2 * a + b * (self.p + 1);
        let d = (self.p + 1) * (self.p + 1) - 4 * (self.p - self.q);
        match (u.cmp(&0), b.cmp(&0)) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (su, sb) if su == sb => su,
            (su, _) => {
                // Opposite signs: |u| against |b| sqrt(D).
                match (u * u).cmp(&(b * b * d)) {
                    Ordering::Greater => su,
                    Ordering::Less => su.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn sub(&self, x: Pair, y: Pair) -> Pair {
        (x.0 - y.0, x.1 - y.1)
    }

    /// Value of a digit string times `beta^shift`, where `shift` clears
    /// every negative position.
    pub fn scaled_value(&self, ds: &DigitString) -> (Pair, u32) {
        let shift = (-ds.lsd_exponent()).max(0) as u32;
        let mut acc: Pair = (0, 0);
        for (i, &d) in ds.digits().iter().enumerate() {
            let pos = ds.msd_exponent() - i as i64 + i64::from(shift);
            let pw = self.power(pos as u32);
            acc = (acc.0 + d as i128 * pw.0, acc.1 + d as i128 * pw.1);
        }
        (acc, shift)
    }

    /// Greedy expansion of `x / beta^f`, scanning digits `p, p-1, ..., 0`.
    /// `None` when more than `budget` fractional digits are needed.
    pub fn greedy(&self, x: Pair, f: u32, budget: u32) -> Option<DigitString> {
        assert_ne!(self.sign(x), Ordering::Less);
        if x == (0, 0) {
            return Some(DigitString::zero());
        }
        let mut rem = x;
        let mut scale = f;
        let mut top: i64 = -1;
        while self.sign(self.sub(rem, self.power((top + 1 + i64::from(scale)) as u32)))
            != Ordering::Less
        {
            top += 1;
        }
        let mut digits = Vec::new();
        let mut pos = top;
        loop {
            if pos < 0 && rem == (0, 0) {
                break;
            }
            if pos < -i64::from(budget) {
                return None;
            }
            while pos + i64::from(scale) < 0 {
                rem = self.times_beta(rem);
                scale += 1;
            }
            let pw = self.power((pos + i64::from(scale)) as u32);
            let mut d = self.p;
            while self.sign(self.sub(rem, (d * pw.0, d * pw.1))) == Ordering::Less {
                d -= 1;
            }
            rem = self.sub(rem, (d * pw.0, d * pw.1));
            digits.push(d as u64);
            pos -= 1;
        }
        Some(DigitString::new(digits, top.max(-1)))
    }

    pub fn greedy_string(&self, ds: &DigitString, budget: u32) -> Option<DigitString> {
        let (v, shift) = self.scaled_value(ds);
        self.greedy(v, shift, budget)
    }

    /// Floating value, for sanity comparisons only.
    pub fn approx(&self, (a, b): Pair) -> f64 {
        let d = ((self.p + 1) * (self.p + 1) - 4 * (self.p - self.q)) as f64;
        let beta = ((self.p + 1) as f64 + d.sqrt()) / 2.0;
        a as f64 + b as f64 * beta
    }
}

pub fn fin_pair(x: &FinElem) -> (Pair, u32) {
    let z = x.z();
    let a: i128 = z.a().try_into().expect("small coefficient");
    let b: i128 = z.b().try_into().expect("small coefficient");
    ((a, b), x.f())
}

pub fn ds(s: &str) -> DigitString {
    s.parse().expect("digit string")
}
