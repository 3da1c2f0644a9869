use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    additivity_deviation, check_ci_identity, check_pure_identity, cusp_deviation,
    enumerate_pure_specs, inclusion_exclusion_deviation, quotient_deviation, shift_deviation,
    VerifyError,
};
use crate::analytic::{ComplexValue, EvalConfig};
use crate::exact::WeightSeq;
use crate::hilbert::{bounded_denumerant_table, BettiTable, HilbertSeries};

pub const SUITE_NAMES: [&str; 6] = [
    "example23",
    "example24",
    "pure",
    "shift",
    "additivity",
    "ci",
];

/// Seed shared by every randomized suite, so reports are reproducible.
const SEED: u64 = 0x5eed_2e7a;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Example23,
    Example24,
    Pure,
    Shift,
    Additivity,
    Ci,
}

impl std::str::FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "example23" => Suite::Example23,
            "example24" => Suite::Example24,
            "pure" => Suite::Pure,
            "shift" => Suite::Shift,
            "additivity" => Suite::Additivity,
            "ci" => Suite::Ci,
            other => return Err(VerifyError::UnknownSuite(other.to_string())),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::Example23,
            Suite::Example24,
            Suite::Pure,
            Suite::Shift,
            Suite::Additivity,
            Suite::Ci,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap();
        f.write_str(SUITE_NAMES[i])
    }
}

/// One named check inside a report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub label: String,
    pub deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub suite: Suite,
    pub tolerance: f64,
    pub lines: Vec<CheckLine>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(suite: Suite, tolerance: f64) -> Self {
        Self {
            suite,
            tolerance,
            lines: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn record(&mut self, label: impl Into<String>, deviation: f64) {
        let passed = deviation <= self.tolerance;
        self.lines.push(CheckLine {
            label: label.into(),
            deviation,
            passed,
        });
    }

    fn record_bool(&mut self, label: impl Into<String>, ok: bool) {
        let deviation = if ok { 0.0 } else { f64::INFINITY };
        self.lines.push(CheckLine {
            label: label.into(),
            deviation,
            passed: ok,
        });
    }

    pub fn passed(&self) -> bool {
        !self.lines.is_empty() && self.lines.iter().all(|l| l.passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.lines.iter().map(|l| l.deviation).fold(0.0, f64::max)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{status} {}: {} checks, max deviation {:.3e} (tolerance {:.0e})",
            self.suite,
            self.lines.len(),
            self.max_deviation(),
            self.tolerance
        )?;
        for line in self.lines.iter().filter(|l| !l.passed) {
            writeln!(f, "  failed {}: {:.3e}", line.label, line.deviation)?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

/// A fixture series, with a resolution when one is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteMember {
    pub name: String,
    pub series: HilbertSeries,
    pub betti: Option<BettiTable>,
}

impl SuiteMember {
    fn plain(name: &str, series: HilbertSeries) -> Self {
        Self {
            name: name.to_string(),
            series,
            betti: None,
        }
    }

    fn resolved(name: &str, weights: &[u64], entries: Vec<(usize, u64, u64)>) -> Self {
        let betti = BettiTable::new(entries).expect("fixture Betti table");
        let series = HilbertSeries::from_betti(ws(weights), &betti);
        Self {
            name: name.to_string(),
            series,
            betti: Some(betti),
        }
    }
}

fn ws(w: &[u64]) -> WeightSeq {
    WeightSeq::new(w.to_vec()).expect("fixture weights")
}

fn free(w: &[u64]) -> HilbertSeries {
    HilbertSeries::free(ws(w))
}

/// `K[x, y]/(x^3 - y^2)` with `deg x = 2`, `deg y = 3`.
pub(crate) fn cusp() -> HilbertSeries {
    free(&[2, 3]).regular_quotient(6)
}

/// Free modules, shifts, regular quotients, direct sums and modules given
/// by a resolution; weights have `r ≤ 4` and `a_i ≤ 5`.
pub fn suite_members() -> Vec<SuiteMember> {
    vec![
        SuiteMember::plain("line", free(&[1])),
        SuiteMember::plain("weighted line", free(&[5])),
        SuiteMember::plain("plane", free(&[1, 1])),
        SuiteMember::plain("weighted plane (2,3)", free(&[2, 3])),
        SuiteMember::plain("free (1,2,4)", free(&[1, 2, 4])),
        SuiteMember::plain("free (2,2,3)", free(&[2, 2, 3])),
        SuiteMember::plain("free (3,4,5,2)", free(&[3, 4, 5, 2])),
        SuiteMember::plain("free (1,1,1,1)", free(&[1, 1, 1, 1])),
        SuiteMember::plain("(2,3)(-2)", free(&[2, 3]).shift(2)),
        SuiteMember::plain("plane(-3)", free(&[1, 1]).shift(3)),
        SuiteMember::plain("(1,2,4)(-1)", free(&[1, 2, 4]).shift(1)),
        SuiteMember::plain("conic", free(&[1, 1, 1]).regular_quotient(2)),
        SuiteMember::plain("plane / (f_2)", free(&[1, 1]).regular_quotient(2)),
        SuiteMember::plain(
            "ci (2,3) in P^2",
            free(&[1, 1, 1]).regular_quotient(2).regular_quotient(3),
        ),
        SuiteMember::plain("cusp", cusp()),
        SuiteMember::plain("(1,2,4) / (f_4)", free(&[1, 2, 4]).regular_quotient(4)),
        SuiteMember::plain("(3,4,5,2) / (f_5)", free(&[3, 4, 5, 2]).regular_quotient(5)),
        SuiteMember::plain(
            "artinian (2,3)",
            free(&[2, 3]).regular_quotient(2).regular_quotient(3),
        ),
        SuiteMember::plain(
            "plane + plane(-2)",
            free(&[1, 1])
                .direct_sum(&free(&[1, 1]).shift(2))
                .expect("same weights"),
        ),
        SuiteMember::plain(
            "eventually 2n+3",
            HilbertSeries::new(ws(&[1, 1]), vec![3, -1]),
        ),
        SuiteMember::resolved("cusp by resolution", &[2, 3], vec![(0, 0, 1), (1, 6, 1)]),
        SuiteMember::resolved(
            "twisted cubic",
            &[1, 1, 1, 1],
            vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)],
        ),
        SuiteMember::resolved(
            "koszul (x,y) in 3 vars",
            &[1, 1, 1],
            vec![(0, 0, 1), (1, 1, 2), (2, 2, 1)],
        ),
        SuiteMember::resolved(
            "(x,y)^2 in 2 vars",
            &[1, 1],
            vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)],
        ),
        SuiteMember::resolved(
            "weighted ci (2,4) over (1,2,3)",
            &[1, 2, 3],
            vec![(0, 0, 1), (1, 2, 1), (1, 4, 1), (2, 6, 1)],
        ),
    ]
}

/// Standard-graded fixtures: polynomial rings, hypersurfaces and complete
/// intersections.
pub fn standard_graded_suite() -> Vec<SuiteMember> {
    let std = |r: usize| HilbertSeries::free(WeightSeq::standard(r));
    let mut out = Vec::new();
    for r in 1..=4 {
        out.push(SuiteMember::plain(&format!("K[x_1..x_{r}]"), std(r)));
    }
    for d in [1, 2, 3, 5, 8] {
        out.push(SuiteMember::plain(
            &format!("plane curve of degree {d}"),
            std(3).regular_quotient(d),
        ));
    }
    out.push(SuiteMember::plain(
        "surface of degree 4 in P^3",
        std(4).regular_quotient(4),
    ));
    out.push(SuiteMember::plain(
        "ci (2,2) in P^3",
        std(4).regular_quotient(2).regular_quotient(2),
    ));
    out.push(SuiteMember::plain(
        "ci (2,3) in P^3",
        std(4).regular_quotient(2).regular_quotient(3),
    ));
    out.push(SuiteMember::plain(
        "ci (3,4) in A^3",
        std(3).regular_quotient(3).regular_quotient(4),
    ));
    out.push(SuiteMember::plain(
        "eventually 2n+3",
        HilbertSeries::new(WeightSeq::standard(2), vec![3, -1]),
    ));
    out.push(SuiteMember::plain(
        "twisted cubic",
        HilbertSeries::from_betti(
            WeightSeq::standard(4),
            &BettiTable::new(vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)]).expect("fixture"),
        ),
    ));
    out
}

/// A point `z` with the given real part and `|Im z| ∈ [0.5, 3]`, so it stays
/// away from the real poles.
pub fn random_z(rng: &mut impl Rng, re: f64) -> ComplexValue {
    let im = rng.gen_range(0.5..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    ComplexValue::new(re, im)
}

/// A randomized structural test case.
#[derive(Debug, Clone)]
pub struct StructuralInstance {
    pub series: HilbertSeries,
    pub other: HilbertSeries,
    pub z: ComplexValue,
    pub w: f64,
    pub degrees: Vec<usize>,
}

/// Draws a suite member, a second module over the same weights, a point with
/// `Re z ∈ [-2, 4]`, a shift `w ∈ [0.2, 3]` and one to three degrees in `1..=4`.
pub fn structural_instance(rng: &mut impl Rng) -> StructuralInstance {
    let members = suite_members();
    let series = members[rng.gen_range(0..members.len())].series.clone();
    let other = HilbertSeries::free(series.weights().clone()).shift(rng.gen_range(0..4));
    let re = rng.gen_range(-2.0..4.0);
    let z = random_z(rng, re);
    let w = rng.gen_range(0.2..3.0);
    let count = rng.gen_range(1..=3);
    let degrees = (0..count).map(|_| rng.gen_range(1..=4)).collect();
    StructuralInstance {
        series,
        other,
        z,
        w,
        degrees,
    }
}

fn seeded() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// Grid `Re ∈ [-2, 4]`, `Im ∈ [-3, 3]` with step 0.5, without the points
/// within `delta` of the poles `z = 1, …, pole_bound`.
pub fn z_grid(pole_bound: usize, delta: f64) -> Vec<ComplexValue> {
    let mut pts = Vec::new();
    for i in 0..=12 {
        for k in 0..=12 {
            let z = ComplexValue::new(-2.0 + 0.5 * i as f64, -3.0 + 0.5 * k as f64);
            if (1..=pole_bound).all(|p| (z - p as f64).norm() > delta) {
                pts.push(z);
            }
        }
    }
    pts
}

pub fn run_suite(suite: Suite, cfg: &EvalConfig) -> Result<CheckReport, VerifyError> {
    match suite {
        Suite::Example23 => example23(cfg),
        Suite::Example24 => example24(cfg),
        Suite::Pure => pure(),
        Suite::Shift => structural(Suite::Shift, cfg),
        Suite::Additivity => structural(Suite::Additivity, cfg),
        Suite::Ci => ci(cfg),
    }
}

fn example23(cfg: &EvalConfig) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new(Suite::Example23, 1e-8);
    for a in [&[2u64, 3][..], &[1, 2, 4], &[2, 2, 3]] {
        // each Barnes term has poles at 1..=r even though their combination is entire
        let grid = z_grid(a.len(), 0.25);
        for w in [0.7, 1.0, 3.0] {
            let dev = check_ci_identity(&ws(a), w, &grid, cfg)?;
            report.record(format!("a={} w={w}", ws(a)), dev);
        }
    }
    let table = bounded_denumerant_table(&ws(&[2, 3]));
    let support: Vec<usize> = table
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(n, _)| n)
        .collect();
    report.record_bool(
        "f_(2,3) support {0,2,3,4,5,7}",
        support == [0, 2, 3, 4, 5, 7],
    );
    report.record_bool("f_(2,3) values are 1", table.iter().all(|&v| v <= 1));
    report.record_bool(
        "f_(2,3) reciprocal of degree 7",
        table.len() == 8 && (0..8).all(|n| table[n] == table[7 - n]),
    );
    Ok(report)
}

fn example24(cfg: &EvalConfig) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new(Suite::Example24, 1e-9);
    let grid = z_grid(1, 0.25);
    for w in [0.5, 1.0, 2.25] {
        let mut worst = 0.0f64;
        for &z in &grid {
            worst = worst.max(cusp_deviation(z, w, cfg)?);
        }
        report.record(format!("w={w}, {} grid points", grid.len()), worst);
    }
    let series = cusp();
    let qp = series.quasi_polynomial()?;
    let a = series.a_invariant()?;
    report.notes.push(format!(
        "Hilbert function 1,0,1,1,1,… agrees with its quasi-polynomial from n = {} (the value at n = 1 is 0, not 1); \
         a-invariant {a}, so alpha = {} is below the bound max(0, a+1) = {}; a statement of alpha = 1 is off by one",
        qp.alpha(),
        qp.alpha(),
        (a + 1).max(0)
    ));
    Ok(report)
}

fn pure() -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new(Suite::Pure, 0.0);
    let specs = enumerate_pure_specs(6, 12);
    let mut literal = 0usize;
    let mut non_integral = 0usize;
    let mut failed = Vec::new();
    for spec in &specs {
        let r = check_pure_identity(spec)?;
        literal += r.literal_holds as usize;
        non_integral += !r.betti_integral as usize;
        let series_ok = r
            .series_multiplicity
            .as_ref()
            .map_or(true, |e| *e == r.multiplicity);
        if !(r.equal && series_ok) {
            failed.push(format!(
                "r={} m={} d={:?}",
                spec.r(),
                spec.m(),
                spec.degrees()
            ));
        }
    }
    report.record_bool(
        format!("(m-1)! R(m) = d_1...d_p / p! on {} specs", specs.len()),
        failed.is_empty(),
    );
    for f in failed.iter().take(5) {
        report.notes.push(format!("mismatch at {f}"));
    }
    report.notes.push(format!(
        "{non_integral} specs have non-integral Betti numbers (no such resolution exists); the residue identity is checked on them anyway"
    ));
    report.notes.push(format!(
        "literal Bernoulli-Barnes sum with d_0 = 0 matches (m-1)!(-1)^p d_1...d_p on {literal} of {} specs",
        specs.len()
    ));
    Ok(report)
}

fn structural(suite: Suite, cfg: &EvalConfig) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new(suite, 1e-8);
    let mut rng = seeded();
    for i in 0..50 {
        let inst = structural_instance(&mut rng);
        match suite {
            Suite::Shift => {
                let k = inst.degrees[0];
                report.record(
                    format!("#{i} shift by {k}"),
                    shift_deviation(&inst.series, k, inst.z, inst.w, cfg)?,
                );
                report.record(
                    format!("#{i} quotient by degree {k}"),
                    quotient_deviation(&inst.series, k, inst.z, inst.w, cfg)?,
                );
                report.record(
                    format!("#{i} regular sequence {:?}", inst.degrees),
                    inclusion_exclusion_deviation(
                        &inst.series,
                        &inst.degrees,
                        inst.z,
                        inst.w,
                        cfg,
                    )?,
                );
            }
            _ => report.record(
                format!("#{i} direct sum"),
                additivity_deviation(&inst.series, &inst.other, inst.z, inst.w, cfg)?,
            ),
        }
    }
    Ok(report)
}

fn ci(cfg: &EvalConfig) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new(Suite::Ci, 1e-8);
    let mut rng = seeded();
    for _ in 0..12 {
        let r = rng.gen_range(1..=3);
        let a: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=6)).collect();
        let w = rng.gen_range(0.3..3.0);
        let zs: Vec<ComplexValue> = (0..8)
            .map(|_| {
                let re = rng.gen_range(-2.0..4.0);
                random_z(&mut rng, re)
            })
            .collect();
        let dev = check_ci_identity(&ws(&a), w, &zs, cfg)?;
        report.record(format!("a={} w={w:.3}", ws(&a)), dev);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_sizes() {
        let members = suite_members();
        assert!(members.len() >= 20);
        assert!(members.iter().all(|m| m.series.weights().len() <= 4));
        assert!(members
            .iter()
            .all(|m| m.series.weights().weights().iter().all(|&a| a <= 5)));
        assert!(members.iter().all(|m| m.series.validate(60)));
        let standard = standard_graded_suite();
        assert!(standard.len() >= 10);
        assert!(standard.iter().all(|m| m.series.weights().is_standard()));
    }

    #[test]
    fn names_round_trip() {
        for name in SUITE_NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn instances_are_reproducible() {
        let a = structural_instance(&mut seeded());
        let b = structural_instance(&mut seeded());
        assert_eq!(
            (a.series, a.z, a.w, a.degrees),
            (b.series, b.z, b.w, b.degrees)
        );
    }

    #[test]
    fn grid_excludes_poles() {
        let grid = z_grid(1, 0.25);
        assert_eq!(grid.len(), 13 * 13 - 1);
        assert!(grid.iter().all(|z| (z - 1.0).norm() > 0.25));
        assert_eq!(z_grid(3, 0.25).len(), 13 * 13 - 3);
    }
}
