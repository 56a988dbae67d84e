use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

use super::{Command, Format, RunConfig};
use crate::cf::quad::JSON_DECIMAL_DIGITS;
use crate::cf::{ContinuedFraction, Convergent, QuadReal};
use crate::error::{Error, Result};
use crate::kabelian::{classify_by_intervals, verify_ternary_property, FactorClass, TernaryReport};
use crate::powers::{
    brute_kab_exponent, construct_linfty_slope, exponent_bound_check, max_integer_power_exponent,
    max_kab_exponent, oracle_cap, sample_spectrum, theta_k, theta_limsup_estimate, BoundReport,
    ExponentRecord, LinftyConstruction, ThetaEstimate,
};
use crate::rotation::{ikm_indices, ikm_intervals, level_intervals, CirclePoint, EndpointConvention};
use crate::words::{factors_of_length, Factor, SturmianSpec};

fn dec(x: &QuadReal) -> String {
    x.to_decimal(JSON_DECIMAL_DIGITS)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

struct Csv(csv::Writer<Vec<u8>>);

impl Csv {
    fn new(header: &[&str]) -> Self {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).expect("in-memory write");
        Csv(w)
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) {
        let fields: Vec<String> = fields.into_iter().collect();
        self.0.write_record(&fields).expect("in-memory write");
    }

    fn finish(self) -> String {
        String::from_utf8(self.0.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

/// Runs one configuration and returns what goes to stdout.
pub fn execute(config: &RunConfig) -> Result<String> {
    let conv: EndpointConvention = config.convention.into();
    let fmt = config.format;
    match &config.command {
        Command::Cf { cf, t_max } => cmd_cf(&ContinuedFraction::parse(cf)?, *t_max, fmt),
        Command::Classes { cf, k, m, emit_circle } => {
            cmd_classes(&ContinuedFraction::parse(cf)?, *k, *m, *emit_circle, conv, fmt)
        }
        Command::Exponent { cf, k, m, verify, cap } => cmd_exponent(
            &ContinuedFraction::parse(cf)?,
            *k,
            *m,
            verify.then(|| cap.unwrap_or_else(oracle_cap)),
            conv,
            fmt,
        ),
        Command::Theta { cf, k, t_max } => cmd_theta(&ContinuedFraction::parse(cf)?, *k, *t_max, fmt),
        Command::Spectrum { k, base, pool, max_quotient } => {
            cmd_spectrum(*k, &ContinuedFraction::parse(base)?, *pool, *max_quotient, fmt)
        }
        Command::Linfty { lambda, stages } => {
            let lambda: BigRational = lambda
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("expected a rational like 7/3, got {lambda:?}")))?;
            cmd_linfty(&construct_linfty_slope(&lambda, *stages)?, fmt)
        }
        Command::Bounds { cf, k, t_max } => {
            cmd_bounds(&exponent_bound_check(&ContinuedFraction::parse(cf)?, *k, *t_max)?, fmt)
        }
        Command::Ternary { cf, k, max_len } => {
            let alpha = ContinuedFraction::parse(cf)?.value();
            let slope = alpha.fract();
            let spec = SturmianSpec::new(slope.clone(), &slope, conv)?;
            cmd_ternary(&verify_ternary_property(&spec, *k, *max_len)?, fmt)
        }
        Command::Powers { cf, m, cap } => {
            let cf = ContinuedFraction::parse(cf)?;
            let e = max_integer_power_exponent(&cf, *m, cap.unwrap_or_else(oracle_cap))?;
            cmd_powers(&cf, *m, e, fmt)
        }
    }
}

#[derive(Serialize)]
struct CfOutput<'a> {
    cf: &'a ContinuedFraction,
    value: QuadReal,
    convergents: Vec<Convergent>,
    lambda: Option<QuadReal>,
}

fn cmd_cf(cf: &ContinuedFraction, t_max: usize, fmt: Format) -> Result<String> {
    let out = CfOutput {
        cf,
        value: cf.value(),
        convergents: cf.convergents(t_max),
        lambda: if cf.is_rational() { None } else { Some(cf.lagrange_constant()?) },
    };
    Ok(match fmt {
        Format::Json => json(&out),
        Format::Csv => {
            let mut w = Csv::new(&["t", "p", "q", "decimal"]);
            for c in &out.convergents {
                w.row([c.t.to_string(), c.p.to_string(), c.q.to_string(), dec(&c.value())]);
            }
            w.finish()
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "cf      {cf}");
            let _ = writeln!(s, "value   {} = {}", out.value, dec(&out.value));
            match &out.lambda {
                Some(l) => {
                    let _ = writeln!(s, "lambda  {l} = {}", dec(l));
                }
                None => s.push_str("lambda  undefined (rational)\n"),
            }
            let _ = writeln!(s, "t\tp_t\tq_t");
            for c in &out.convergents {
                let _ = writeln!(s, "{}\t{}\t{}", c.t, c.p, c.q);
            }
            s
        }
    })
}

#[derive(Serialize)]
struct CircleCut {
    /// The cut is `{-index * alpha}`.
    index: usize,
    point: CirclePoint,
}

#[derive(Serialize)]
struct Circle {
    cuts: Vec<CircleCut>,
    factors: Vec<Factor>,
}

#[derive(Serialize)]
struct ClassesOutput {
    k: usize,
    m: usize,
    classes: Vec<FactorClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    circle: Option<Circle>,
}

fn cmd_classes(
    cf: &ContinuedFraction,
    k: usize,
    m: usize,
    emit_circle: bool,
    conv: EndpointConvention,
    fmt: Format,
) -> Result<String> {
    let alpha = cf.value();
    let classes = classify_by_intervals(&alpha, k, m, conv)?;
    let family = ikm_intervals(&alpha, k, m, conv)?;
    let circle = if emit_circle {
        let neg = -&alpha;
        let mut cuts: Vec<CircleCut> = ikm_indices(k, m)
            .into_iter()
            .map(|i| CircleCut {
                index: i,
                point: CirclePoint::new(&neg.mul_int(i as i64)),
            })
            .collect();
        cuts.sort_by(|a, b| a.point.cmp(&b.point).then(a.index.cmp(&b.index)));
        Some(Circle {
            cuts,
            factors: factors_of_length(&alpha, m, conv)?,
        })
    } else {
        None
    };
    let out = ClassesOutput { k, m, classes, circle };
    Ok(match fmt {
        Format::Json => json(&out),
        Format::Csv => {
            let mut w = Csv::new(&["interval_index", "start", "length", "members"]);
            for c in &out.classes {
                let i = c.interval_index.expect("interval classes");
                let members: Vec<String> = c.members.iter().map(ToString::to_string).collect();
                w.row([
                    i.to_string(),
                    dec(family.start(i).value()),
                    dec(&family.length(i)),
                    members.join(" "),
                ]);
            }
            w.finish()
        }
        Format::Text => {
            let mut s = String::new();
            for c in &out.classes {
                let i = c.interval_index.expect("interval classes");
                let members: Vec<String> = c.members.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    s,
                    "J{i}\tstart {}\tlength {}\t{{{}}}",
                    family.start(i).value().to_decimal(6),
                    family.length(i).to_decimal(6),
                    members.join(", ")
                );
            }
            s
        }
    })
}

#[derive(Serialize)]
struct OracleCheck {
    exponent: u64,
    agrees: bool,
}

#[derive(Serialize)]
struct ExponentOutput {
    #[serde(flatten)]
    record: ExponentRecord,
    oracle: Option<OracleCheck>,
}

fn cmd_exponent(
    cf: &ContinuedFraction,
    k: usize,
    m: usize,
    verify_cap: Option<usize>,
    conv: EndpointConvention,
    fmt: Format,
) -> Result<String> {
    let alpha = cf.value();
    let record = max_kab_exponent(&alpha, k, m, conv)?;
    let oracle = match verify_cap {
        Some(cap) => {
            let e = brute_kab_exponent(&alpha, k, m, conv, cap)?;
            if e != record.exponent {
                return Err(Error::Invariant(format!(
                    "formula gives {} but the oracle finds {e}",
                    record.exponent
                )));
            }
            Some(OracleCheck { exponent: e, agrees: true })
        }
        None => None,
    };
    let out = ExponentOutput { record, oracle };
    let witness = out
        .record
        .witness
        .as_ref()
        .map_or(String::new(), |w| w.word.to_string());
    Ok(match fmt {
        Format::Json => json(&out),
        Format::Csv => {
            let mut w = Csv::new(&["k", "m", "exponent", "witness", "oracle"]);
            w.row([
                k.to_string(),
                m.to_string(),
                out.record.exponent.to_string(),
                witness,
                out.oracle.as_ref().map_or(String::new(), |o| o.exponent.to_string()),
            ]);
            w.finish()
        }
        Format::Text => {
            let mut s = format!("A_{k}({m}) = {}\n", out.record.exponent);
            if let Some(w) = &out.record.witness {
                let _ = writeln!(s, "witness {} from x = {}", w.word, dec(w.intercept.value()));
            }
            if let Some(o) = &out.oracle {
                let _ = writeln!(s, "oracle  {} (agrees)", o.exponent);
            }
            s
        }
    })
}

#[derive(Serialize)]
struct ThetaOutput<'a> {
    cf: &'a ContinuedFraction,
    k: usize,
    theta: QuadReal,
    lambda: QuadReal,
    max_level_length: QuadReal,
    estimate: Option<ThetaEstimate>,
}

fn cmd_theta(cf: &ContinuedFraction, k: usize, t_max: Option<usize>, fmt: Format) -> Result<String> {
    let theta = theta_k(cf, k)?;
    let lambda = cf.lagrange_constant()?;
    let (_, max_level_length) =
        level_intervals(&cf.value(), 2 * k - 2, EndpointConvention::default())?.extremes();
    let estimate = t_max.map(|t| theta_limsup_estimate(cf, k, t)).transpose()?;
    let out = ThetaOutput { cf, k, theta, lambda, max_level_length, estimate };
    Ok(match fmt {
        Format::Json => json(&out),
        Format::Csv => {
            let mut w = Csv::new(&["cf", "k", "theta", "decimal", "estimate"]);
            w.row([
                cf.to_string(),
                k.to_string(),
                out.theta.to_string(),
                dec(&out.theta),
                out.estimate.as_ref().map_or(String::new(), |e| dec(&e.estimate)),
            ]);
            w.finish()
        }
        Format::Text => {
            let mut s = format!("Theta_{k} = {} = {}\n", out.theta, dec(&out.theta));
            let _ = writeln!(s, "max L({}) = {}", 2 * k - 2, out.max_level_length);
            let _ = writeln!(s, "lambda = {}", out.lambda);
            if let Some(e) = &out.estimate {
                let _ = writeln!(
                    s,
                    "estimate {} over t = {}..={} (slack {})",
                    dec(&e.estimate),
                    e.t_first,
                    e.t_last,
                    e.slack.to_decimal(6)
                );
            }
            s
        }
    })
}

fn cmd_spectrum(k: usize, base: &ContinuedFraction, pool: usize, max_quotient: u32, fmt: Format) -> Result<String> {
    let points = sample_spectrum(k, base, pool, max_quotient)?;
    Ok(match fmt {
        Format::Json => {
            let mut s = String::new();
            for p in &points {
                s.push_str(&serde_json::to_string(p).expect("point serializes"));
                s.push('\n');
            }
            s
        }
        Format::Csv | Format::Text => {
            let mut w = Csv::new(&["index", "cf", "k", "theta", "decimal"]);
            for (i, p) in points.iter().enumerate() {
                let theta = p.theta.finite().expect("periodic slopes have finite theta");
                w.row([i.to_string(), p.alpha_cf.to_string(), k.to_string(), theta.to_string(), dec(theta)]);
            }
            w.finish()
        }
    })
}

#[derive(Serialize)]
struct LinftyOutput<'a> {
    prefix: String,
    #[serde(flatten)]
    construction: &'a LinftyConstruction,
}

fn cmd_linfty(c: &LinftyConstruction, fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Json => json(&LinftyOutput {
            prefix: c.prefix_text(),
            construction: c,
        }),
        Format::Csv | Format::Text => {
            let mut w = Csv::new(&["t", "k_t", "q_k", "r", "s", "a_next", "ratio", "error", "bound"]);
            for st in &c.stages {
                w.row([
                    st.t.to_string(),
                    st.k_t.to_string(),
                    st.q_k.to_string(),
                    st.r.to_string(),
                    st.s.to_string(),
                    st.a_next.to_string(),
                    st.ratio.to_string(),
                    dec(&st.error),
                    st.bound.to_string(),
                ]);
            }
            let mut s = w.finish();
            if fmt == Format::Text {
                s = format!("prefix {}\n{s}", c.prefix_text());
            }
            s
        }
    })
}

fn cmd_bounds(r: &BoundReport, fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Json => json(r),
        Format::Csv | Format::Text => {
            let mut w = Csv::new(&["t", "q_t", "A(q_t)", "max A(m)", "argmax", "plus_one_holds"]);
            for win in &r.windows {
                w.row([
                    win.t.to_string(),
                    win.q_t.to_string(),
                    win.exponent_at_q_t.to_string(),
                    win.max_exponent.to_string(),
                    win.argmax.to_string(),
                    win.plus_one_holds.to_string(),
                ]);
            }
            let mut s = w.finish();
            if fmt == Format::Text {
                let _ = writeln!(s, "violations: {}", r.violations.len());
                for v in &r.violations {
                    let _ = writeln!(s, "  {} m={}: {}", v.check, v.m, v.detail);
                }
            }
            s
        }
    })
}

fn cmd_ternary(r: &TernaryReport, fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Json => json(r),
        Format::Csv | Format::Text => {
            let mut w = Csv::new(&["k", "max_len", "pairs_checked", "counterexamples"]);
            w.row([
                r.k.to_string(),
                r.max_len.to_string(),
                r.pairs_checked.to_string(),
                r.counterexamples.len().to_string(),
            ]);
            w.finish()
        }
    })
}

#[derive(Serialize)]
struct PowersOutput<'a> {
    cf: &'a ContinuedFraction,
    m: usize,
    exponent: u64,
}

fn cmd_powers(cf: &ContinuedFraction, m: usize, exponent: u64, fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Json => json(&PowersOutput { cf, m, exponent }),
        Format::Csv | Format::Text => {
            let mut w = Csv::new(&["cf", "m", "exponent"]);
            w.row([cf.to_string(), m.to_string(), exponent.to_string()]);
            w.finish()
        }
    })
}
