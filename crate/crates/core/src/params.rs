use serde::Serialize;

use crate::error::{Error, Result};

/// The pair `(p, q)` with `p > q >= 1`.
///
/// It fixes the base `beta`, the larger root of `x^2 - (p+1)x + (p-q)`, whose
/// Renyi expansion of unity is `p q q q ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params {
    p: u32,
    q: u32,
}

impl Params {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q == 0 || p <= q {
            return Err(Error::InvalidParams { p, q });
        }
        let params = Params { p, q };
        let d = params.discriminant();
        let r = d.isqrt();
        if r * r == d {
            return Err(Error::InvalidParams { p, q });
        }
        Ok(params)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `p - q`, the norm of beta and the constant term of its minimal polynomial.
    pub fn norm(&self) -> u32 {
        self.p - self.q
    }

    /// `p + 1`, the trace of beta.
    pub fn trace(&self) -> u32 {
        self.p + 1
    }

    /// `(p+1)^2 - 4(p-q)`.
    pub fn discriminant(&self) -> u64 {
        let t = u64::from(self.trace());
        t * t - 4 * u64::from(self.norm())
    }

    /// `T = ceil((p-1)/q)`: the balance constant of the fixed point.
    pub fn balance_bound(&self) -> u32 {
        (self.p - 1).div_ceil(self.q)
    }

    /// `t = floor((p+q)/(q+1))`: where the defect sequence stops growing by one.
    pub fn defect_knee(&self) -> u32 {
        (self.p + self.q) / (self.q + 1)
    }

    /// `ceil(p/q)`: upper bound on fractional digits created by one addition.
    pub fn lplus_upper(&self) -> u32 {
        self.p.div_ceil(self.q)
    }

    /// `floor((p-1)/q)`: lower bound on fractional digits created by one addition.
    pub fn lplus_lower(&self) -> u32 {
        (self.p - 1) / self.q
    }

    /// True when `q = p - 1` and beta is a quadratic unit.
    pub fn is_unit(&self) -> bool {
        self.q + 1 == self.p
    }

    /// Floating approximation of beta. For display only.
    pub fn beta_approx(&self) -> f64 {
        (f64::from(self.trace()) + (self.discriminant() as f64).sqrt()) / 2.0
    }

    /// Every valid pair with `1 <= q <= p - 2` and `p <= p_max`.
    pub fn non_unit_grid(p_max: u32) -> Vec<Params> {
        (3..=p_max)
            .flat_map(|p| (1..=p - 2).map(move |q| Params { p, q }))
            .collect()
    }

    /// Every valid pair with `p_min <= p <= p_max`, including units.
    pub fn full_grid(p_min: u32, p_max: u32) -> Vec<Params> {
        (p_min.max(2)..=p_max)
            .flat_map(|p| (1..p).map(move |q| Params { p, q }))
            .collect()
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(p={}, q={})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_pairs() {
        assert!(Params::new(3, 3).is_err());
        assert!(Params::new(2, 0).is_err());
        assert!(Params::new(1, 2).is_err());
        assert!(Params::new(2, 1).is_ok());
    }

    #[test]
    fn derived_constants() {
        let p = Params::new(5, 2).unwrap();
        assert_eq!(p.discriminant(), 24);
        assert_eq!(p.balance_bound(), 2);
        assert_eq!(p.defect_knee(), 2);
        assert_eq!(p.lplus_upper(), 3);
        assert_eq!(p.lplus_lower(), 2);
        let p = Params::new(4, 1).unwrap();
        assert_eq!((p.defect_knee(), p.balance_bound()), (2, 3));
    }

    #[test]
    fn discriminant_never_square() {
        for p in 2..200 {
            for q in 1..p {
                assert!(Params::new(p, q).is_ok(), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn grids() {
        assert_eq!(Params::non_unit_grid(20).len(), (1..=18).sum::<usize>());
        assert_eq!(Params::full_grid(2, 4).len(), 1 + 2 + 3);
    }
}
