use std::path::Path;

use graded_zeta::analytic::{
    residues_betti, residues_from_shifts, AnalyticError, ComplexValue, EvalConfig, ModuleZeta,
    ResidueTable,
};
use graded_zeta::exact::{rat, Rational, WeightSeq};
use graded_zeta::hilbert::{bounded_denumerant, restricted_partition};
use graded_zeta::verify::{
    multiplicity_routes, run_suite, samuel_multiplicity, SamuelInput, Suite,
};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::output::{decimal, poly_in_w, rational, rationals, ResultDoc};
use crate::spec::{Module, ModuleSpecDoc};
use crate::{Cli, Command};

/// Runs one subcommand. The flag is false when a check failed.
pub fn run(cli: Cli) -> Result<(ResultDoc, bool), CliError> {
    let mut cfg = EvalConfig::default();
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Parse(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        cfg = cfg.with_tolerance(tol);
    }
    match cli.command {
        Command::Hilbert { spec, n } => hilbert(&load(&spec)?, n).map(ok),
        Command::Quasipoly { spec } => quasipoly(&load(&spec)?).map(ok),
        Command::Eval { spec, z, w, direct } => eval(&load(&spec)?, &z, w, direct, &cfg).map(ok),
        Command::Residues {
            spec,
            w,
            limit,
            betti_route,
            iterate,
        } => residues(&load(&spec)?, w.as_deref(), limit, betti_route, iterate),
        Command::Mult { spec, samuel } => mult(&load(&spec)?, samuel),
        Command::Partition { a, n, bounded } => partition(a, n, bounded).map(ok),
        Command::Check { suite } => check(&suite, &cfg),
        Command::Grid {
            spec,
            w,
            re,
            im,
            out,
        } => grid(&load(&spec)?, w, &re, &im, &out, &cfg).map(ok),
    }
}

fn ok(doc: ResultDoc) -> (ResultDoc, bool) {
    (doc, true)
}

fn load(path: &Path) -> Result<Module, CliError> {
    ModuleSpecDoc::load(path)?.build()
}

fn echo(module: &Module, extra: Value) -> Value {
    let mut input = json!({ "spec": module.doc });
    if let (Value::Object(input), Value::Object(extra)) = (&mut input, extra) {
        input.extend(extra);
    }
    input
}

fn hilbert(module: &Module, n: usize) -> Result<ResultDoc, CliError> {
    let expansion = module.series.expand(n);
    let mut doc = ResultDoc::new("hilbert", echo(module, json!({ "n": n })));
    let values: Vec<Value> = expansion
        .values
        .iter()
        .map(|v| Value::String(v.to_string()))
        .collect();
    doc.exact("values", Value::Array(values));
    doc.note(format!("series {}", module.series));
    if !expansion.is_module_series {
        doc.note("negative coefficient: not the Hilbert series of a module");
    }
    Ok(doc)
}

fn quasipoly(module: &Module) -> Result<ResultDoc, CliError> {
    let qp = module.series.quasi_polynomial()?;
    let mut doc = ResultDoc::new("quasipoly", echo(module, json!({})));
    doc.exact("period", rational(&rat(qp.period() as i64)))
        .exact("alpha", rational(&rat(qp.alpha() as i64)))
        .exact("a_invariant", rational(&rat(module.series.a_invariant()?)))
        .exact(
            "dimension",
            rational(&rat(module.series.dimension()? as i64)),
        );
    let table: Vec<Value> = qp.table().iter().map(|row| rationals(row)).collect();
    doc.exact("coefficients", Value::Array(table));
    doc.note("coefficients[k][j] is the coefficient of n^k for n = j mod period");
    Ok(doc)
}

fn parse_z(text: &str) -> Result<ComplexValue, CliError> {
    let bad = || CliError::Parse(format!("expected RE or RE,IM for z, got {text:?}"));
    let mut parts = text
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()));
    let re = parts.next().ok_or_else(bad)??;
    let im = parts.next().transpose()?.unwrap_or(0.0);
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(ComplexValue::new(re, im))
}

fn eval(
    module: &Module,
    z: &str,
    w: f64,
    direct: bool,
    cfg: &EvalConfig,
) -> Result<ResultDoc, CliError> {
    let z = parse_z(z)?;
    if !(w > 0.0 && w.is_finite()) {
        return Err(CliError::Parse(format!("w must be positive, got {w}")));
    }
    let zeta = ModuleZeta::new(&module.series, *cfg);
    let value = zeta.eval(z, w)?;
    let mut doc = ResultDoc::new(
        "eval",
        echo(
            module,
            json!({ "z": [z.re, z.im], "w": w, "direct": direct }),
        ),
    );
    doc.numeric("re", value.re)
        .numeric("im", value.im)
        .numeric("abs", value.norm())
        .numeric("arg", value.arg())
        .tolerance(cfg.target_abs_tol);
    if direct {
        let eps = cfg.target_abs_tol.max(1e-11);
        let oracle = zeta.direct(z, w, eps)?;
        doc.numeric("direct_re", oracle.re)
            .numeric("direct_im", oracle.im)
            .numeric("difference", (value - oracle).norm());
        doc.note(format!(
            "direct sum truncated at tail bound {}",
            decimal(eps)
        ));
    }
    Ok(doc)
}

fn parse_rational(text: &str) -> Result<Rational, CliError> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| CliError::Parse(format!("expected an integer or p/q, got {text:?}")))
}

fn residues(
    module: &Module,
    w: Option<&str>,
    limit: bool,
    betti_route: bool,
    iterate: usize,
) -> Result<(ResultDoc, bool), CliError> {
    let w = w.map(parse_rational).transpose()?;
    if limit && w.is_some() {
        return Err(CliError::Parse("--limit and --w are exclusive".into()));
    }
    let series = module.series.iterate(iterate);
    if series.is_zero() {
        return Err(CliError::Compute("the zero module has no residues".into()));
    }
    let zeta = ModuleZeta::new(&series, EvalConfig::default());
    let mut doc = ResultDoc::new(
        "residues",
        echo(
            module,
            json!({ "w": w.as_ref().map(|q| q.to_string()), "limit": limit, "betti_route": betti_route, "iterate": iterate }),
        ),
    );
    let mut agrees = true;
    let table: ResidueTable = if betti_route {
        let weights: WeightSeq = series.weights().clone();
        let table = match &module.betti {
            Some(betti) => {
                doc.note("route: graded Betti numbers");
                residues_betti(&weights, betti)
            }
            None => {
                doc.note("route: numerator shifts");
                let shifts: Vec<(u64, Rational)> = series
                    .numerator()
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, &c)| (j as u64, rat(c)))
                    .collect();
                residues_from_shifts(&weights, &shifts)
            }
        };
        agrees = table.same_residues(zeta.residues());
        doc.note(if agrees {
            "agrees exactly with the closed route"
        } else {
            "DISAGREES with the closed route"
        });
        table
    } else {
        zeta.residues().clone()
    };

    let mut poles = Map::new();
    if limit {
        for (pole, value) in zeta.limit_residues().specialize(&rat(0)) {
            poles.insert(pole.to_string(), rational(&value));
        }
        doc.note("residues of the w -> 0 limit function");
    } else if let Some(w) = &w {
        for (pole, value) in table.specialize(w) {
            poles.insert(pole.to_string(), rational(&value));
        }
    } else {
        for (pole, poly) in table.iter() {
            poles.insert(pole.to_string(), poly_in_w(poly));
        }
    }
    doc.exact("pole_bound", rational(&rat(zeta.pole_bound() as i64)));
    doc.exact("residues", Value::Object(poles));
    Ok((doc, agrees))
}

fn mult(module: &Module, samuel: bool) -> Result<(ResultDoc, bool), CliError> {
    let mut doc = ResultDoc::new("mult", echo(module, json!({ "samuel": samuel })));
    let routes = multiplicity_routes(&module.series)?;
    doc.exact("dimension", rational(&rat(routes.dimension as i64)))
        .exact("e", rational(&routes.numerator_at_one))
        .exact(
            "hilbert_coefficients",
            rationals(&routes.hilbert_coefficients),
        )
        .exact(
            "routes",
            json!({
                "numerator_at_one": rational(&routes.numerator_at_one),
                "leading_coefficient": rational(&routes.leading_coefficient),
                "residue": rational(&routes.residue),
                "residue_at_zero_shift": rational(&routes.residue_at_zero_shift),
                "iterated_residue": rational(&routes.iterated_residue),
            }),
        );
    if samuel {
        let input = SamuelInput::new(module.series.clone())?;
        doc.exact(
            "samuel_multiplicity",
            rational(&samuel_multiplicity(&input)?),
        );
    }
    let all_equal = routes.all_equal();
    doc.note(if all_equal {
        "all routes agree"
    } else {
        "routes DISAGREE"
    });
    Ok((doc, all_equal))
}

fn partition(a: Vec<u64>, n: u64, bounded: bool) -> Result<ResultDoc, CliError> {
    let weights = WeightSeq::new(a.clone()).map_err(|e| CliError::Parse(e.to_string()))?;
    let count = if bounded {
        bounded_denumerant(&weights, n)
    } else {
        restricted_partition(&weights, n)
    };
    let mut doc = ResultDoc::new("partition", json!({ "a": a, "n": n, "bounded": bounded }));
    doc.exact("value", Value::String(count.to_string()));
    doc.note(if bounded {
        "bounded denumerant: solutions with 0 <= k_i < D / a_i"
    } else {
        "restricted partitions of n into parts from a"
    });
    Ok(doc)
}

fn check(suite: &str, cfg: &EvalConfig) -> Result<(ResultDoc, bool), CliError> {
    let suite: Suite = suite
        .parse()
        .map_err(|e: graded_zeta::verify::VerifyError| CliError::Parse(e.to_string()))?;
    let report = run_suite(suite, cfg)?;
    let passed = report.passed();
    let mut doc = ResultDoc::new("check", json!({ "suite": suite.to_string() }));
    doc.status = Some(if passed { "PASS" } else { "FAIL" });
    doc.numeric("max_deviation", report.max_deviation())
        .numeric("checks", report.lines.len() as f64)
        .tolerance(report.tolerance);
    for line in report.lines.iter().filter(|l| !l.passed) {
        doc.note(format!(
            "failed {}: {}",
            line.label,
            decimal(line.deviation)
        ));
    }
    for note in &report.notes {
        doc.note(note.clone());
    }
    eprint!("{report}");
    Ok((doc, passed))
}

fn parse_range(text: &str, name: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Parse(format!("expected LO:HI:STEP for --{name}, got {text:?}"));
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [lo, hi, step] = parts[..] else {
        return Err(bad());
    };
    if !(lo.is_finite() && hi.is_finite() && step > 0.0 && step.is_finite() && lo <= hi) {
        return Err(bad());
    }
    // the small slack keeps HI itself when (HI - LO)/STEP is integral up to rounding
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(CliError::Parse(format!(
            "--{name} has {count} points, limit is 1000000"
        )));
    }
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

fn grid(
    module: &Module,
    w: f64,
    re: &str,
    im: &str,
    out: &Path,
    cfg: &EvalConfig,
) -> Result<ResultDoc, CliError> {
    let res = parse_range(re, "re")?;
    let ims = parse_range(im, "im")?;
    if !(w > 0.0 && w.is_finite()) {
        return Err(CliError::Parse(format!("w must be positive, got {w}")));
    }
    let zeta = ModuleZeta::new(&module.series, *cfg);
    let points: Vec<ComplexValue> = res
        .iter()
        .flat_map(|&x| ims.iter().map(move |&y| ComplexValue::new(x, y)))
        .collect();
    // poles become `inf,NaN` rows so the grid stays rectangular
    let values: Vec<Option<ComplexValue>> = points
        .par_iter()
        .map(|&z| match zeta.eval(z, w) {
            Ok(v) => Ok(Some(v)),
            Err(AnalyticError::Pole { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_, _>>()?;

    let mut writer = csv::Writer::from_path(out).map_err(csv_error)?;
    writer
        .write_record(["re", "im", "abs", "arg"])
        .map_err(csv_error)?;
    let mut poles = 0;
    for (z, value) in points.iter().zip(&values) {
        let (abs, arg) = match value {
            Some(v) => (decimal(v.norm()), decimal(v.arg())),
            None => {
                poles += 1;
                (decimal(f64::INFINITY), decimal(f64::NAN))
            }
        };
        writer
            .write_record([decimal(z.re), decimal(z.im), abs, arg])
            .map_err(csv_error)?;
    }
    writer.flush()?;

    let mut doc = ResultDoc::new(
        "grid",
        echo(
            module,
            json!({ "w": w, "re": re, "im": im, "out": out.display().to_string() }),
        ),
    );
    doc.numeric("points", points.len() as f64)
        .tolerance(cfg.target_abs_tol);
    if poles > 0 {
        doc.note(format!(
            "{poles} points on poles written as abs = inf, arg = NaN"
        ));
    }
    Ok(doc)
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(e.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_z() {
        assert_eq!(parse_z("2").unwrap(), ComplexValue::new(2.0, 0.0));
        assert_eq!(parse_z("-1.5, 3").unwrap(), ComplexValue::new(-1.5, 3.0));
        assert!(parse_z("1,2,3").is_err());
        assert!(parse_z("x").is_err());
        assert!(parse_z("").is_err());
    }

    #[test]
    fn parses_ranges() {
        assert_eq!(
            parse_range("-1:1:0.5", "re").unwrap(),
            vec![-1.0, -0.5, 0.0, 0.5, 1.0]
        );
        assert_eq!(parse_range("0:0.3:0.1", "re").unwrap().len(), 4);
        assert_eq!(parse_range("2:2:1", "re").unwrap(), vec![2.0]);
        for bad in ["1:0:1", "0:1:0", "0:1", "a:b:c", "0:1:-1"] {
            assert!(parse_range(bad, "re").is_err(), "{bad}");
        }
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(
            parse_rational("7/10").unwrap(),
            Rational::new(7.into(), 10.into())
        );
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert!(parse_rational("0.7").is_err());
    }
}
