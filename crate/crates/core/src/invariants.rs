//! Closed-form invariants from Puiseux data and from divides.
//!
//! The Milnor number of an irreducible branch with Newton pairs
//! `(p_1, l_1), ..., (p_k, l_k)` is taken as
//! `sum_i (p_i - 1)(l_i - 1) * prod_{j > i} p_j`. The product bound is
//! sometimes printed as `prod_{j=i}^{k+1} p_{j+1}`, which runs past the last
//! pair; reading the empty tail as 1 gives the formula above and recovers
//! `(p - 1)(q - 1)` for a single pair.

use num_integer::Integer;
use serde::Serialize;

use crate::divide::Divide;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxSequence(pub Vec<(u64, u64)>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonSequence(pub Vec<(u64, u64)>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub mu: usize,
    pub delta: usize,
    pub r: usize,
    /// Branches of the singularity: each immersed circle carries a pair of
    /// complex conjugate branches.
    pub b: usize,
    pub genus: usize,
    pub intervals: usize,
    pub circles: usize,
    /// Crossing counts between strands.
    pub nu: Vec<Vec<usize>>,
}

impl PuiseuxSequence {
    pub fn validate(&self) -> Result<()> {
        let pairs = &self.0;
        if pairs.is_empty() {
            return Err(Error::InvalidPuiseux("empty sequence".into()));
        }
        let mut prod = 1u64;
        let mut prev: Option<(u64, u64)> = None;
        for (i, &(p, q)) in pairs.iter().enumerate() {
            if p < 2 || p >= q {
                return Err(Error::InvalidPuiseux(format!("pair {i}: need 2 <= p < q, got ({p}, {q})")));
            }
            prod *= p;
            if q.gcd(&prod) != 1 {
                return Err(Error::InvalidPuiseux(format!(
                    "pair {i}: gcd(q, p_1...p_i) = {} != 1",
                    q.gcd(&prod)
                )));
            }
            if let Some((q0, prod0)) = prev {
                // q0 / prod0 < q / prod
                if (q0 as u128) * (prod as u128) >= (q as u128) * (prod0 as u128) {
                    return Err(Error::InvalidPuiseux(format!(
                        "pair {i}: characteristic exponents must increase"
                    )));
                }
            }
            prev = Some((q, prod));
        }
        Ok(())
    }
}

pub fn newton_from_puiseux(s: &PuiseuxSequence) -> Result<NewtonSequence> {
    s.validate()?;
    let mut out: Vec<(u64, u64)> = Vec::with_capacity(s.0.len());
    for (i, &(p, q)) in s.0.iter().enumerate() {
        let lambda = if i == 0 {
            q
        } else {
            let (pp, lp) = out[i - 1];
            let qp = s.0[i - 1].1;
            q + lp * p * pp - qp * p
        };
        out.push((p, lambda));
    }
    Ok(NewtonSequence(out))
}

pub fn milnor_irreducible(n: &NewtonSequence) -> u64 {
    let pairs = &n.0;
    (0..pairs.len())
        .map(|i| {
            let (p, l) = pairs[i];
            let tail: u64 = pairs[i + 1..].iter().map(|&(pj, _)| pj).product();
            (p - 1) * (l - 1) * tail
        })
        .sum()
}

/// Milnor number of a reducible germ from its branches:
/// `sum mu_i + 2 sum_{i<j} nu_ij - b + 1`.
pub fn milnor_total(branch_mus: &[i64], nu: &[Vec<i64>], b: usize) -> Result<i64> {
    if branch_mus.len() != b || nu.len() != b || nu.iter().any(|row| row.len() != b) {
        return Err(Error::DimensionMismatch(format!(
            "{} branch values and a {}x? matrix for b = {b}",
            branch_mus.len(),
            nu.len()
        )));
    }
    for i in 0..b {
        for j in 0..b {
            if nu[i][j] != nu[j][i] {
                return Err(Error::DimensionMismatch(format!("nu is not symmetric at ({i}, {j})")));
            }
        }
    }
    let pairs: i64 = (0..b).flat_map(|i| (i + 1..b).map(move |j| (i, j))).map(|(i, j)| nu[i][j]).sum();
    Ok(branch_mus.iter().sum::<i64>() + 2 * pairs - b as i64 + 1)
}

/// Genus of the Milnor fiber from `mu` and the branch count.
pub fn genus_of(mu: usize, b: usize) -> Option<usize> {
    let twice = (mu + 1).checked_sub(b)?;
    (twice % 2 == 0).then_some(twice / 2)
}

/// Invariants of a divide. `mu` is `r + delta`; a divide with `C` immersed
/// circles has `b = intervals + 2C` branches and delta invariant `delta + C`,
/// so the check `mu = 2(delta + C) - b + 1` reduces to the usual identity
/// when there are no circles.
pub fn record_from_divide(d: &Divide) -> Result<InvariantRecord> {
    let c = d.census();
    let mu = c.r + c.delta;
    let b = c.intervals + 2 * c.circles;
    let delta_inv = c.delta + c.circles;
    if (mu + b) as i64 != 2 * delta_inv as i64 + 1 {
        return Err(Error::IncoherentDivide(format!(
            "r + delta = {mu} but 2 delta - b + 1 = {}",
            2 * delta_inv as i64 - b as i64 + 1
        )));
    }
    let genus = genus_of(mu, b)
        .ok_or_else(|| Error::IncoherentDivide(format!("mu - b + 1 is odd (mu = {mu}, b = {b})")))?;
    Ok(InvariantRecord {
        mu,
        delta: c.delta,
        r: c.r,
        b,
        genus,
        intervals: c.intervals,
        circles: c.circles,
        nu: d.nu(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chebyshev_divide, generic_lines};

    #[test]
    fn newton_recursion() {
        let n = newton_from_puiseux(&PuiseuxSequence(vec![(2, 3), (2, 7)])).unwrap();
        assert_eq!(n, NewtonSequence(vec![(2, 3), (2, 13)]));
        assert_eq!(newton_from_puiseux(&PuiseuxSequence(vec![(3, 7)])).unwrap().0, vec![(3, 7)]);
    }

    #[test]
    fn milnor_of_branches() {
        assert_eq!(milnor_irreducible(&NewtonSequence(vec![(2, 3)])), 2);
        assert_eq!(milnor_irreducible(&NewtonSequence(vec![(3, 7)])), 12);
        assert_eq!(milnor_irreducible(&NewtonSequence(vec![(2, 3), (2, 13)])), 16);
    }

    #[test]
    fn invalid_puiseux() {
        for bad in [vec![(1, 3)], vec![(3, 3)], vec![(2, 4)], vec![(2, 5), (2, 7)], vec![]] {
            let err = newton_from_puiseux(&PuiseuxSequence(bad)).unwrap_err();
            assert_eq!(err.code(), "InvalidPuiseux");
        }
    }

    #[test]
    fn milnor_total_examples() {
        let ones = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        assert_eq!(milnor_total(&[0, 0, 0], &ones, 3).unwrap(), 4);
        assert_eq!(milnor_total(&[0, 0], &ones, 2).unwrap_err().code(), "DimensionMismatch");
    }

    #[test]
    fn records() {
        let r = record_from_divide(&generic_lines(4).unwrap()).unwrap();
        assert_eq!((r.mu, r.genus, r.b), (9, 3, 4));
        let r = record_from_divide(&chebyshev_divide(3, 7).unwrap()).unwrap();
        assert_eq!((r.mu, r.delta, r.r, r.genus, r.b), (12, 6, 6, 6, 1));
        let r = record_from_divide(&generic_lines(2).unwrap()).unwrap();
        assert_eq!((r.mu, r.genus, r.b), (1, 0, 2));
        let r = record_from_divide(&chebyshev_divide(4, 4).unwrap()).unwrap();
        assert_eq!((r.mu, r.delta, r.r, r.b, r.genus, r.circles), (9, 5, 4, 4, 3, 1));
    }
}
