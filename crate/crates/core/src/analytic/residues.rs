use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{
    bernoulli_barnes_poly, binomial, factorial, RatPolynomial, Rational, WeightSeq,
};
use crate::hilbert::{BettiTable, HilbertSeries, QuasiPolynomial};

/// Exact residues at the poles `z = 1, …, m`, each a polynomial in `w`.
///
/// Poles whose residue vanishes identically are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResidueTable {
    m: usize,
    entries: BTreeMap<usize, RatPolynomial>,
}

impl ResidueTable {
    pub fn new(m: usize, entries: impl IntoIterator<Item = (usize, RatPolynomial)>) -> Self {
        let entries = entries.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Self { m, entries }
    }

    /// Bound on the pole locations considered.
    pub fn pole_bound(&self) -> usize {
        self.m
    }

    /// Residue at `z = pole`; the zero polynomial when absent.
    pub fn get(&self, pole: usize) -> RatPolynomial {
        self.entries.get(&pole).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &RatPolynomial)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// Substitutes a value for `w` in every residue.
    pub fn specialize(&self, w: &Rational) -> BTreeMap<usize, Rational> {
        self.entries.iter().map(|(&k, p)| (k, p.eval(w))).collect()
    }

    /// Same non-zero residues, ignoring the declared pole bounds.
    pub fn same_residues(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

/// `R_M(w, p+1) = (1/D) Σ_{ℓ=p}^{m-1} C(ℓ, p) (-w)^{ℓ-p} Σ_{j<D} d_ℓ(j)`.
pub(crate) fn residues_closed_from(qp: &QuasiPolynomial) -> ResidueTable {
    let m = (qp.degree() + 1) as usize;
    let d = Rational::from_integer(BigInt::from(qp.period()));
    let sums: Vec<Rational> = (0..m).map(|k| qp.period_sum(k) / &d).collect();
    let entries = (0..m).map(|p| {
        let coeffs = (p..m)
            .map(|l| {
                let sign = if (l - p) % 2 == 0 { 1 } else { -1 };
                Rational::from_integer(binomial(l as u64, p as u64) * sign) * &sums[l]
            })
            .collect();
        (p + 1, RatPolynomial::from_coeffs(coeffs))
    });
    ResidueTable::new(m, entries)
}

/// `R_M(k+1) = (1/D) Σ_{j<D} d_k(j)`.
pub(crate) fn residues_limit_from(qp: &QuasiPolynomial) -> ResidueTable {
    let m = (qp.degree() + 1) as usize;
    let d = Rational::from_integer(BigInt::from(qp.period()));
    let entries = (0..m).map(|k| (k + 1, RatPolynomial::constant(qp.period_sum(k) / &d)));
    ResidueTable::new(m, entries)
}

fn quasi_or_zero(series: &HilbertSeries) -> QuasiPolynomial {
    if series.is_zero() {
        QuasiPolynomial::zero(series.weights().period())
    } else {
        series.quasi_polynomial().expect("non-zero series")
    }
}

/// Residues of `ζ_M(z, w)` read off the quasi-polynomial. Empty in dimension 0.
pub fn residues_closed(series: &HilbertSeries) -> ResidueTable {
    residues_closed_from(&quasi_or_zero(series))
}

/// Residues of `ζ_M(z) = Σ_{n≥1} H(M, n) n^{-z}`, constant in `w`.
pub fn residues_limit(series: &HilbertSeries) -> ResidueTable {
    residues_limit_from(&quasi_or_zero(series))
}

/// Residues of `ζ_M(z, w)` from a graded free resolution and Bernoulli–Barnes
/// polynomials:
///
/// `R_M(w, ℓ) = Σ_{i,j} β_{ij} (-1)^{i+r-ℓ} / ((ℓ-1)! (r-ℓ)!) · B_{r-ℓ}(w + j; a)`.
pub fn residues_betti(weights: &WeightSeq, betti: &BettiTable) -> ResidueTable {
    residues_from_shifts(weights, &betti.signed_shifts())
}

/// The Betti-route residue formula for an arbitrary rational combination
/// `Σ c_j · S(-j)` of shifted free modules, given as `(j, c_j)` pairs.
pub fn residues_from_shifts(weights: &WeightSeq, shifts: &[(u64, Rational)]) -> ResidueTable {
    let r = weights.len();
    // Σ_j c_j B(x + j) = Σ_k B^{(k)}(x)/k! · Σ_j c_j j^k, so only the moments
    // of the shifts are needed.
    let moments: Vec<Rational> = (0..r)
        .map(|k| {
            shifts
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| c * Rational::from_integer(BigInt::from(*j).pow(k as u32)))
                .sum()
        })
        .collect();
    let entries = (1..=r).map(|l| {
        let sign = if (r - l) % 2 == 0 { 1 } else { -1 };
        let scale = Rational::new(
            BigInt::from(sign),
            factorial(l as u64 - 1) * factorial((r - l) as u64),
        );
        let mut derivative = bernoulli_barnes_poly(r - l, weights);
        let mut total = RatPolynomial::zero();
        for (k, moment) in moments.iter().enumerate().take(r - l + 1) {
            if !moment.is_zero() {
                let c = moment / Rational::from_integer(factorial(k as u64));
                total = &total + &derivative.scale(&c);
            }
            derivative = derivative.derivative();
        }
        (l, total.scale(&scale))
    });
    ResidueTable::new(r, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn ws(w: &[u64]) -> WeightSeq {
        WeightSeq::new(w.to_vec()).unwrap()
    }

    #[test]
    fn plane_residues() {
        let table = residues_closed(&HilbertSeries::free(ws(&[1, 1])));
        assert_eq!(table.get(2), RatPolynomial::one());
        assert_eq!(table.get(1), RatPolynomial::from_ints(&[1, -1]));
        let limit = residues_limit(&HilbertSeries::free(ws(&[1, 1])));
        assert_eq!(limit.get(2), RatPolynomial::one());
        assert_eq!(limit.get(1), RatPolynomial::one());
    }

    #[test]
    fn index_disambiguation_module() {
        // H(n) = 2n + 3: residue at z = 1 is 3 - 2w
        let s = HilbertSeries::new(ws(&[1, 1]), vec![3, -1]);
        assert_eq!(
            residues_closed(&s).get(1),
            RatPolynomial::from_ints(&[3, -2])
        );
        assert_eq!(residues_closed(&s).get(2), RatPolynomial::constant(rat(2)));
    }

    #[test]
    fn weighted_plane_residues() {
        let s = HilbertSeries::free(ws(&[2, 3]));
        assert_eq!(
            residues_closed(&s).get(2),
            RatPolynomial::constant(ratio(1, 6))
        );
        assert_eq!(
            residues_limit(&s).get(2),
            RatPolynomial::constant(ratio(1, 6))
        );
        let betti = BettiTable::new(vec![(0, 0, 1)]).unwrap();
        assert_eq!(
            residues_betti(&ws(&[2, 3]), &betti).get(2),
            RatPolynomial::constant(ratio(1, 6))
        );
    }

    #[test]
    fn cusp_residues_all_routes() {
        let a = ws(&[2, 3]);
        let betti = BettiTable::new(vec![(0, 0, 1), (1, 6, 1)]).unwrap();
        let s = HilbertSeries::from_betti(a.clone(), &betti);
        let closed = residues_closed(&s);
        let by_betti = residues_betti(&a, &betti);
        assert_eq!(closed.get(1), RatPolynomial::one());
        assert!(by_betti.get(2).is_zero());
        assert_eq!(by_betti.get(1), RatPolynomial::one());
        assert!(closed.same_residues(&by_betti));
        assert_eq!(residues_limit(&s).get(1), RatPolynomial::one());
    }

    #[test]
    fn routes_agree_on_free_modules() {
        let seqs: [&[u64]; 5] = [&[1], &[2, 3], &[1, 2, 4], &[2, 2, 3], &[3, 4, 5, 2]];
        let free = BettiTable::new(vec![(0, 0, 1)]).unwrap();
        for a in seqs {
            let a = ws(a);
            let s = HilbertSeries::free(a.clone());
            assert_eq!(
                residues_closed(&s),
                ResidueTable {
                    m: a.len(),
                    ..residues_betti(&a, &free)
                }
            );
            let limit = residues_limit(&s);
            let at_zero = residues_betti(&a, &free).specialize(&rat(0));
            assert_eq!(limit.specialize(&rat(0)), at_zero);
        }
    }

    #[test]
    fn zero_dimensional_tables_are_empty() {
        let s = HilbertSeries::free(ws(&[2, 3]))
            .regular_quotient(2)
            .regular_quotient(3);
        assert!(residues_closed(&s).is_empty());
        assert!(residues_limit(&s).is_empty());
        let betti = BettiTable::new(vec![(0, 0, 1), (1, 2, 1), (1, 3, 1), (2, 5, 1)]).unwrap();
        assert!(residues_betti(&ws(&[2, 3]), &betti).is_empty());
    }
}
