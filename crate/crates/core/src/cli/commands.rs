use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::Value;

use super::config::{CommandConfig, Direction, Family, InputSource, LinSpace, RunConfig, Subject};
use super::output::{num, Body, Output, Table};
use super::verify::run_suite;
use super::CliError;
use crate::error::{Error, Result};
use crate::heat::{heat_kernel_at, log_heat_kernel, log_ratio};
use crate::jacobi::{eigenfunction_g, phi, weight_a, weight_b, Domain, JCParams, SampledFunction};
use crate::modulation::{
    envelope_norm, stft, truncated_norm, verdict, LatticeAxis, LatticeSpec, MixedNormSpec, Window,
};
use crate::specfun::{make_grid, QuadGrid};
use crate::transform::{
    c_function, forward_on_grid, forward_transform, gaussian_envelope, inverse_transform,
    plancherel_density,
};
use crate::uncertainty::{classify, verify_witness};

pub fn execute(config: &RunConfig) -> std::result::Result<Output, CliError> {
    config.validate().map_err(CliError::Validation)?;
    let params = config.params().map_err(CliError::Validation)?;
    let (warnings, body) = match &config.command {
        CommandConfig::Eval { subject, lambda, t, points } => {
            (Vec::new(), Body::Rows(eval(&params, *subject, *lambda, *t, points)?))
        }
        CommandConfig::Transform { direction, input, points } => {
            let (table, warnings) = transform(&params, config, *direction, input, points)?;
            (warnings, Body::Rows(table))
        }
        CommandConfig::Heat { t, points } => (Vec::new(), Body::Rows(heat(&params, *t, points)?)),
        CommandConfig::Stft { family, window_width, x, w } => {
            let (table, warnings) = stft_table(&params, *family, *window_width, x, w)?;
            (warnings, Body::Rows(table))
        }
        CommandConfig::Modnorm { family, envelope, p, q, measure, truncations, lattice } => {
            let spec = MixedNormSpec { p: *p, q: *q, measure: *measure, params };
            let grid = covering_grid(truncations, lattice)?;
            let f = family.sample(&params, &grid, Domain::Spatial)?;
            let mut seq = Vec::new();
            let mut table =
                Table::new(&["truncation", "norm", "tail_fraction", "saturated", "verdict"]);
            for &tr in truncations {
                let r = match envelope {
                    Some(e) => envelope_norm(&f, *e, &spec, tr, lattice)?,
                    None => truncated_norm(&f, &spec, tr, lattice)?,
                };
                seq.push(r);
                table.push(vec![
                    num(tr),
                    num(r.norm),
                    num(r.tail_fraction),
                    Value::Bool(r.saturated),
                    serde_json::to_value(verdict(&seq)).expect("verdict serializes"),
                ]);
            }
            let warnings = seq
                .iter()
                .filter(|r| r.saturated)
                .map(|r| format!("envelope saturated at truncation {}", r.truncation))
                .collect();
            (warnings, Body::Rows(table))
        }
        CommandConfig::Verify { suite, lambdas, random_lambdas, seed } => {
            let checks = run_suite(&params, &config.grids, *suite, lambdas, *random_lambdas, *seed)?;
            (Vec::new(), Body::Checks(checks))
        }
        CommandConfig::Regime { input, probe_t, ladder } => {
            let report = match probe_t {
                Some(t) => verify_witness(&params, input, *t, ladder)?,
                None => classify(input)?,
            };
            let table = match &report.norm_sequences {
                Some(s) => {
                    let mut t = Table::new(&["side", "truncation", "norm", "tail_fraction"]);
                    for (side, seq) in [("spatial", &s.spatial), ("spectral", &s.spectral)] {
                        for r in seq.iter() {
                            t.push(vec![
                                Value::String(side.into()),
                                num(r.truncation),
                                num(r.norm),
                                num(r.tail_fraction),
                            ]);
                        }
                    }
                    t
                }
                None => {
                    let mut t = Table::new(&["classification", "product", "threshold"]);
                    t.push(vec![
                        serde_json::to_value(report.classification).expect("serializes"),
                        num(report.product),
                        num(report.threshold),
                    ]);
                    t
                }
            };
            let value = serde_json::to_value(&report).expect("report serializes");
            (Vec::new(), Body::Report(value, table))
        }
    };
    Ok(Output { config: config.clone(), warnings, body })
}

fn complex_row(point: f64, v: Complex64) -> Vec<Value> {
    vec![num(point), num(v.re), num(v.im)]
}

fn eval(
    p: &JCParams,
    subject: Subject,
    lambda: Option<Complex64>,
    t: Option<f64>,
    points: &LinSpace,
) -> Result<Table> {
    let xs = points.points();
    let lambda = lambda.unwrap_or(Complex64::new(0.0, 0.0));
    let mut table;
    match subject {
        Subject::G | Subject::Phi => {
            table = Table::new(&["x", "re", "im"]);
            let values = xs
                .par_iter()
                .map(|&x| match subject {
                    Subject::G => eigenfunction_g(p, lambda, x),
                    _ => phi(p, lambda, x),
                })
                .collect::<Result<Vec<_>>>()?;
            for (&x, v) in xs.iter().zip(values) {
                table.push(complex_row(x, v));
            }
        }
        Subject::A | Subject::B => {
            table = Table::new(&["x", "value"]);
            for &x in &xs {
                let v = if subject == Subject::A { weight_a(p, x) } else { weight_b(p, x) };
                table.push(vec![num(x), num(v)]);
            }
        }
        Subject::C => {
            table = Table::new(&["lambda", "re", "im"]);
            for &l in &xs {
                table.push(complex_row(l, c_function(p, Complex64::new(l, 0.0))?));
            }
        }
        Subject::Density => {
            table = Table::new(&["lambda", "re", "im", "abs_density"]);
            for &l in &xs {
                let d = plancherel_density(p, l)?;
                table.push(vec![num(l), num(d.density.re), num(d.density.im), num(d.abs_density)]);
            }
        }
        Subject::Heat => {
            table = Table::new(&["x", "value"]);
            let t = t.ok_or_else(|| Error::InvalidArgument("eval heat needs --t".into()))?;
            for (&x, v) in xs.iter().zip(heat_kernel_at(p, t, &xs)?) {
                table.push(vec![num(x), num(v)]);
            }
        }
    }
    Ok(table)
}

#[derive(serde::Deserialize)]
struct CsvSample {
    x: f64,
    re: f64,
    im: f64,
}

fn read_samples(path: &str, grid: &QuadGrid, domain: Domain) -> std::result::Result<SampledFunction, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    let headers = reader.headers().map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    if headers.iter().collect::<Vec<_>>() != ["x", "re", "im"] {
        return Err(CliError::Input(format!("{path}: header must be x,re,im")));
    }
    let rows = reader
        .deserialize::<CsvSample>()
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    if rows.len() != grid.len() {
        return Err(CliError::Input(format!(
            "{path}: {} samples, but the configured grid has {} nodes",
            rows.len(),
            grid.len()
        )));
    }
    for (row, &node) in rows.iter().zip(grid.nodes()) {
        if (row.x - node).abs() > 1e-9 * node.abs().max(1.0) {
            return Err(CliError::Input(format!(
                "{path}: sample at x = {} does not match grid node {node}",
                row.x
            )));
        }
    }
    let values = rows.iter().map(|r| Complex64::new(r.re, r.im)).collect();
    SampledFunction::new(grid.clone(), values, domain).map_err(CliError::Validation)
}

fn transform(
    p: &JCParams,
    config: &RunConfig,
    direction: Direction,
    input: &InputSource,
    points: &LinSpace,
) -> std::result::Result<(Table, Vec<String>), CliError> {
    let spatial = config.grids.spatial.build()?;
    let spectral = config.grids.spectral.build()?;
    let load = |grid: &QuadGrid, domain: Domain| match input {
        InputSource::Family { family } => family.sample(p, grid, domain).map_err(CliError::from),
        InputSource::Csv { path } => read_samples(path, grid, domain),
    };
    let pts = points.points();
    match direction {
        Direction::Forward => {
            let f = load(&spatial, Domain::Spatial)?;
            let lambdas: Vec<Complex64> = pts.iter().map(|&l| Complex64::new(l, 0.0)).collect();
            let h = forward_transform(p, &f, &lambdas)?;
            let mut table = Table::new(&["lambda", "re", "im"]);
            for (&l, &v) in pts.iter().zip(&h.values) {
                table.push(complex_row(l, v));
            }
            Ok((table, h.warnings))
        }
        Direction::Inverse => {
            let g = load(&spectral, Domain::Spectral)?;
            let back = inverse_transform(p, &g, &pts)?;
            let mut table = Table::new(&["x", "re", "im"]);
            for (&x, &v) in pts.iter().zip(&back.values) {
                table.push(complex_row(x, v));
            }
            Ok((table, back.warnings))
        }
        Direction::Roundtrip => {
            let InputSource::Family { family } = input else {
                return Err(CliError::Validation(Error::InvalidArgument(
                    "roundtrip takes a named family".into(),
                )));
            };
            let f = family.sample(p, &spatial, Domain::Spatial)?;
            let (hf, mut warnings) = forward_on_grid(p, &f, &spectral)?;
            let back = inverse_transform(p, &hf, &pts)?;
            warnings.extend(back.warnings.iter().cloned());
            let exact = |x: f64| -> Result<f64> {
                Ok(match family {
                    Family::Zero => 0.0,
                    Family::Constant => 1.0,
                    Family::Gaussian => (-std::f64::consts::PI * x * x).exp(),
                    Family::GaussianEnvelope => gaussian_envelope(p, x),
                    Family::HeatKernel { t } => log_heat_kernel(p, *t, x)?.exp(),
                })
            };
            let mut table = Table::new(&["x", "expected", "re", "im", "abs_err"]);
            for (&x, &v) in pts.iter().zip(&back.values) {
                let e = exact(x)?;
                table.push(vec![num(x), num(e), num(v.re), num(v.im), num((v - e).norm())]);
            }
            Ok((table, warnings))
        }
    }
}

fn heat(p: &JCParams, t: f64, points: &LinSpace) -> Result<Table> {
    let xs = points.points();
    let rows = xs
        .par_iter()
        .map(|&x| Ok((log_heat_kernel(p, t, x)?, log_ratio(p, t, x)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&["x", "value", "log_value", "log_ratio"]);
    for (&x, (l, r)) in xs.iter().zip(rows) {
        table.push(vec![num(x), num(l.exp()), num(l), num(r)]);
    }
    Ok(table)
}

/// Grid reaching past the largest truncation by the window support.
fn covering_grid(truncations: &[f64], lattice: &LatticeSpec) -> Result<QuadGrid> {
    let top = truncations.iter().cloned().fold(0.0f64, f64::max);
    let half = (top + lattice.window.support()).ceil();
    make_grid(half, (8.0 * half) as usize, 16)
}

fn stft_table(
    p: &JCParams,
    family: Family,
    width: f64,
    x: &LinSpace,
    w: &LinSpace,
) -> Result<(Table, Vec<String>)> {
    let window = Window::Gaussian { width };
    let reach = x.lo.abs().max(x.hi.abs());
    let half = (reach + window.support()).ceil();
    let grid = make_grid(half, (8.0 * half) as usize, 16)?;
    let f = family.sample(p, &grid, Domain::Spatial)?;
    let x_axis = LatticeAxis::Uniform { lo: x.lo, hi: x.hi, points: x.n };
    let w_axis = LatticeAxis::Uniform { lo: w.lo, hi: w.hi, points: w.n };
    let (lat, warnings) = stft(&f, window, &x_axis, &w_axis)?;
    let mut table = Table::new(&["x", "w", "re", "im", "abs"]);
    for (i, &xi) in lat.x_nodes.iter().enumerate() {
        for (j, &wj) in lat.w_nodes.iter().enumerate() {
            let v = lat.value(i, j);
            table.push(vec![num(xi), num(wj), num(v.re), num(v.im), num(v.norm())]);
        }
    }
    Ok((table, warnings))
}
