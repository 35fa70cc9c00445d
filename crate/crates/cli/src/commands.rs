use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hardy_embed::extremal::SweepOptions;
use hardy_embed::quadrature::DEFAULT_NODES_PER_PANEL;
use hardy_embed::sampling::{random_unit_coefficients, random_unit_polynomial, seeded_rng};
use hardy_embed::spectral::{GrowthRow, DEFAULT_MAX_ITER};
use hardy_embed::{
    bilinear_form_naive, cauchy_schwarz_bound, h2i_sq_norm_quadrature, local_sweep,
    operator_norm_estimate, optimality_sweep, quadratic_form_fast, weight_integral_closed,
    weight_integral_quadrature, Cell, Complex64, DirichletPolynomial, GrowthTable,
    QuadratureRule, SweepReport,
};
use rayon::prelude::*;

use crate::output::{format_float, to_csv, to_json};
use crate::plot::{LinePlot, Series};
use crate::{
    BoundArgs, Command, ExtremalArgs, IdentityArgs, LocalArgs, OutputArgs, SpectralArgs,
    WeightArgs,
};

pub struct Outcome {
    pub report: SweepReport,
    pub violations: Vec<String>,
    pub summary: Vec<String>,
    pub plot: Option<LinePlot>,
}

pub fn run(command: &Command) -> Result<Outcome> {
    let (outcome, output) = match command {
        Command::CheckIdentity(a) => (check_identity(a)?, &a.output),
        Command::Bound(a) => (bound(a)?, &a.output),
        Command::Spectral(a) => (spectral(a)?, &a.output),
        Command::Extremal(a) => (extremal(a)?, &a.output),
        Command::LocalSweep(a) => (local(a)?, &a.output),
        Command::Weights(a) => (weights(a)?, &a.output),
    };
    emit(&outcome, output)?;
    Ok(outcome)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(outcome: &Outcome, output: &OutputArgs) -> Result<()> {
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    match &output.out_csv {
        Some(path) => write(path, &to_csv(&outcome.report))?,
        None => print!("{}", to_csv(&outcome.report)),
    }
    if let Some(path) = &output.out_json {
        write(path, &to_json(&outcome.report))?;
    }
    if let Some(path) = &output.out_svg {
        match &outcome.plot {
            Some(plot) => write(path, &plot.render())?,
            None => eprintln!("note: `{}` has no plot; --out-svg ignored", outcome.report.name),
        }
    }
    Ok(())
}

fn check_identity(args: &IdentityArgs) -> Result<Outcome> {
    if args.n == 0 || args.trials == 0 {
        bail!("--n and --trials must be positive");
    }
    let mut rng = seeded_rng(args.seed);
    let polys: Vec<DirichletPolynomial> =
        (0..args.trials).map(|_| random_unit_polynomial(&mut rng, args.n)).collect();
    let rows = polys
        .par_iter()
        .map(|f| {
            let rule = QuadratureRule::for_polynomial(f, 0.5 * args.tol)?;
            let quad = h2i_sq_norm_quadrature(f, &rule)?;
            Ok((quad, quadratic_form_fast(f.coefficients())))
        })
        .collect::<hardy_embed::Result<Vec<_>>>()?;

    let mut report = SweepReport::new(
        "check-identity",
        &["trial", "n", "quadrature", "quadratic_form", "deviation", "tail_bound", "truncation_height", "panels"],
    );
    let mut violations = Vec::new();
    let mut max_dev: f64 = 0.0;
    for (trial, (quad, form)) in rows.iter().enumerate() {
        let dev = (quad.value - form).abs();
        max_dev = max_dev.max(dev);
        if dev > args.tol {
            violations.push(format!(
                "trial {trial} (seed {}, n {}): |{} - {}| = {dev:e} > {:e}",
                args.seed, args.n, quad.value, form, args.tol
            ));
        }
        report.push(vec![
            Cell::from(trial),
            Cell::from(args.n),
            Cell::Float(quad.value),
            Cell::Float(*form),
            Cell::Float(dev),
            Cell::Float(quad.tail_bound),
            Cell::Float(quad.truncation_height),
            Cell::from(quad.panel_count),
        ]);
    }
    report.set_meta("seed", args.seed);
    report.set_meta("tolerance", args.tol);
    report.set_meta("max_deviation", max_dev);
    Ok(Outcome {
        summary: vec![format!("check-identity: {} trials, max deviation {}", args.trials, format_float(max_dev))],
        report,
        violations,
        plot: None,
    })
}

fn bound(args: &BoundArgs) -> Result<Outcome> {
    if args.n == 0 || args.trials == 0 {
        bail!("--n and --trials must be positive");
    }
    let mut rng = seeded_rng(args.seed);
    let pairs: Vec<(Vec<Complex64>, Vec<Complex64>)> = (0..args.trials)
        .map(|_| {
            let a = random_unit_coefficients(&mut rng, args.n);
            let b = random_unit_coefficients(&mut rng, args.n);
            (a, b)
        })
        .collect();
    let norm = |v: &[Complex64]| v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let rows: Vec<(f64, f64, f64, f64, f64)> = pairs
        .par_iter()
        .map(|(a, b)| {
            let (na, nb) = (norm(a), norm(b));
            (
                bilinear_form_naive(a, b).norm(),
                cauchy_schwarz_bound(a, b),
                2.0 * na * nb,
                quadratic_form_fast(a),
                na * na,
            )
        })
        .collect();

    let mut report = SweepReport::new(
        "bound",
        &["trial", "n", "abs_bilinear", "schur_bound", "two_norm_product", "quadratic_form", "norm_sq", "bilinear_ratio", "quadratic_ratio"],
    );
    let mut violations = Vec::new();
    let (mut max_b, mut max_cs, mut max_q) = (0.0f64, 0.0f64, 0.0f64);
    for (trial, &(abs_b, cs, two_ab, q, na2)) in rows.iter().enumerate() {
        let ctx = format!("trial {trial} (seed {}, n {})", args.seed, args.n);
        if abs_b > cs * (1.0 + 1e-12) {
            violations.push(format!("{ctx}: |B| = {abs_b} exceeds the row-sum bound {cs}"));
        }
        if cs >= two_ab {
            violations.push(format!("{ctx}: row-sum bound {cs} not below 2|a||b| = {two_ab}"));
        }
        if q >= 2.0 * na2 {
            violations.push(format!("{ctx}: Q(a) = {q} not below 2|a|^2 = {}", 2.0 * na2));
        }
        let (b_ratio, q_ratio) = (2.0 * abs_b / two_ab, q / na2);
        max_b = max_b.max(b_ratio);
        max_cs = max_cs.max(2.0 * cs / two_ab);
        max_q = max_q.max(q_ratio);
        report.push(vec![
            Cell::from(trial),
            Cell::from(args.n),
            Cell::Float(abs_b),
            Cell::Float(cs),
            Cell::Float(two_ab),
            Cell::Float(q),
            Cell::Float(na2),
            Cell::Float(b_ratio),
            Cell::Float(q_ratio),
        ]);
    }
    report.set_meta("seed", args.seed);
    report.set_meta("max_bilinear_ratio", max_b);
    report.set_meta("max_schur_ratio", max_cs);
    report.set_meta("max_quadratic_ratio", max_q);
    Ok(Outcome {
        summary: vec![format!(
            "bound: max |B|/(|a||b|) = {}, max schur/(|a||b|) = {}, max Q/|a|^2 = {} (all must stay < 2)",
            format_float(max_b),
            format_float(max_cs),
            format_float(max_q)
        )],
        report,
        violations,
        plot: None,
    })
}

fn spectral(args: &SpectralArgs) -> Result<Outcome> {
    if args.n_grid.is_empty() || args.n_grid.contains(&0) || args.n_grid.windows(2).any(|w| w[1] <= w[0]) {
        bail!("--n-grid must be nonempty, positive and strictly increasing");
    }
    let rows = args
        .n_grid
        .par_iter()
        .map(|&n| operator_norm_estimate(n, args.tol, DEFAULT_MAX_ITER).map(|estimate| GrowthRow { n, estimate }))
        .collect::<hardy_embed::Result<Vec<_>>>()?;
    let table = GrowthTable { rows, tolerance: args.tol };
    let mut violations = Vec::new();
    for w in table.rows.windows(2) {
        if w[1].estimate.lambda_max < w[0].estimate.lambda_max - args.tol {
            violations.push(format!(
                "lambda_max decreased from N = {} ({}) to N = {} ({})",
                w[0].n, w[0].estimate.lambda_max, w[1].n, w[1].estimate.lambda_max
            ));
        }
    }
    for r in &table.rows {
        if r.estimate.lambda_max + r.estimate.residual >= 2.0 {
            violations.push(format!("N = {}: lambda_max + residual = {} >= 2", r.n, r.estimate.lambda_max + r.estimate.residual));
        }
    }
    let summary = table
        .rows
        .iter()
        .map(|r| format!("N = {:>8}  lambda_max = {}  residual = {:.3e}", r.n, format_float(r.estimate.lambda_max), r.estimate.residual))
        .collect();
    let plot = LinePlot {
        title: "Largest eigenvalue of the truncated kernel".into(),
        x_label: "N".into(),
        y_label: "lambda_max(K_N)".into(),
        log_x: true,
        series: vec![Series {
            label: "lambda_max".into(),
            points: table.rows.iter().map(|r| (r.n as f64, r.estimate.lambda_max)).collect(),
        }],
        reference_y: Some(2.0),
    };
    Ok(Outcome { report: table.report(), violations, summary, plot: Some(plot) })
}

fn extremal(args: &ExtremalArgs) -> Result<Outcome> {
    let eps = if args.eps.is_empty() { &args.eps_grid } else { &args.eps };
    let opts = SweepOptions {
        include_rayleigh: !args.no_rayleigh,
        spectral_check: true,
        spectral_tolerance: args.tol,
    };
    let sweep = optimality_sweep(eps, &args.n_grid, &opts)?;
    let mut violations = Vec::new();
    for b in &sweep.bounds {
        if b.ratio >= 2.0 {
            violations.push(format!("epsilon = {}: bound ratio {} >= 2", b.epsilon, b.ratio));
        }
    }
    for w in sweep.bounds.windows(2) {
        if w[1].ratio <= w[0].ratio {
            violations.push(format!(
                "bound ratio not increasing from epsilon = {} to {}",
                w[0].epsilon, w[1].epsilon
            ));
        }
    }
    for c in &sweep.rayleigh {
        if c.rayleigh >= 2.0 {
            violations.push(format!("epsilon = {}, N = {}: Rayleigh quotient {} >= 2", c.epsilon, c.n, c.rayleigh));
        }
    }
    for c in sweep.spectral_violations(args.tol) {
        violations.push(format!("epsilon = {}, N = {}: Rayleigh quotient {} above lambda_max", c.epsilon, c.n, c.rayleigh));
    }

    let mut report = sweep.report();
    report.set_meta("spectral_tolerance", args.tol);
    report.set_meta("rayleigh_ratio", "Q_N / D_N (truncated norms)");
    report.set_meta("bound_ratio", "lower_bound / zeta(1 + 2 eps)");

    let mut summary: Vec<String> = sweep
        .bounds
        .iter()
        .map(|b| format!("epsilon = {:<8} lower bound = {}  ratio = {}", b.epsilon, format_float(b.lower_bound), format_float(b.ratio)))
        .collect();
    summary.extend(sweep.rayleigh.iter().map(|c| {
        format!("epsilon = {:<8} N = {:>8}  rayleigh = {}", c.epsilon, c.n, format_float(c.rayleigh))
    }));

    let mut series = vec![Series {
        label: "closed bound".into(),
        points: sweep.bounds.iter().map(|b| (b.epsilon, b.ratio)).collect(),
    }];
    for &n in &args.n_grid {
        let points: Vec<(f64, f64)> = sweep.rayleigh.iter().filter(|c| c.n == n).map(|c| (c.epsilon, c.rayleigh)).collect();
        if !points.is_empty() {
            series.push(Series { label: format!("Rayleigh N={n}"), points });
        }
    }
    let plot = LinePlot {
        title: "Norm ratio of the shifted zeta family".into(),
        x_label: "epsilon".into(),
        y_label: "ratio".into(),
        log_x: true,
        series,
        reference_y: Some(2.0),
    };
    Ok(Outcome { report, violations, summary, plot: Some(plot) })
}

/// Comma list of numbers, or `start:stop:count` for an evenly spaced grid.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let start: f64 = parts[0].trim().parse().context("grid start")?;
        let stop: f64 = parts[1].trim().parse().context("grid stop")?;
        let count: usize = parts[2].trim().parse().context("grid count")?;
        return match count {
            0 => bail!("grid count must be positive"),
            1 => Ok(vec![start]),
            _ => Ok((0..count)
                .map(|k| start + (stop - start) * k as f64 / (count - 1) as f64)
                .collect()),
        };
    }
    text.split(',')
        .map(|s| s.trim().parse::<f64>().with_context(|| format!("grid value `{s}`")))
        .collect()
}

fn local(args: &LocalArgs) -> Result<Outcome> {
    let f = match &args.coefficients {
        Some(path) => {
            let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
            DirichletPolynomial::from_csv_reader(std::io::BufReader::new(file))?
        }
        None => {
            if args.n == 0 {
                bail!("--n must be positive");
            }
            random_unit_polynomial(&mut seeded_rng(args.seed), args.n)
        }
    };
    let grid = parse_grid(&args.tau_grid)?;
    let rule = QuadratureRule::new(1.0, 2, DEFAULT_NODES_PER_PANEL, args.tol)?;
    let sweep = local_sweep(&f, &grid, &rule)?;
    let sup = f.critical_line_bound().powi(2);
    let violations = sweep
        .rows
        .iter()
        .filter(|(_, v)| *v > sup * (1.0 + 1e-12))
        .map(|(tau, v)| format!("tau = {tau}: window integral {v} exceeds the sup bound {sup}"))
        .collect();
    let mut report = sweep.report();
    report.set_meta("n", f.len());
    report.set_meta("seed", if args.coefficients.is_some() { Cell::Empty } else { Cell::Int(args.seed) });
    report.set_meta("note", "observed lower bound on the local constant; no sharpness claim");
    let plot = LinePlot {
        title: "Unit-window integrals of |f(1/2+it)|^2".into(),
        x_label: "tau".into(),
        y_label: "integral over [tau, tau+1]".into(),
        log_x: false,
        series: vec![Series { label: "window".into(), points: sweep.rows.clone() }],
        reference_y: None,
    };
    Ok(Outcome {
        summary: vec![format!(
            "local-sweep: max {} at tau = {}, observed ratio sqrt(max)/|f| = {}",
            format_float(sweep.max_value),
            sweep.argmax_tau,
            format_float(sweep.ratio)
        )],
        report,
        violations,
        plot: Some(plot),
    })
}

fn weights(args: &WeightArgs) -> Result<Outcome> {
    let grid: Vec<f64> = if args.x_grid.is_empty() {
        (-20..=20).map(|k| 2f64.powi(k)).collect()
    } else {
        args.x_grid.clone()
    };
    let rows = grid
        .par_iter()
        .map(|&x| {
            let rule = QuadratureRule::for_weight(x, 0.5 * args.tol)?;
            let quad = weight_integral_quadrature(x, &rule)?;
            Ok((x, weight_integral_closed(x)?, quad))
        })
        .collect::<hardy_embed::Result<Vec<_>>>()?;
    let mut report = SweepReport::new(
        "weights",
        &["x", "closed", "quadrature", "abs_diff", "tail_bound", "truncation_height", "panels"],
    );
    let mut violations = Vec::new();
    let mut max_diff: f64 = 0.0;
    for &(x, closed, quad) in &rows {
        let diff = (quad.value - closed).abs();
        max_diff = max_diff.max(diff);
        if diff > args.tol {
            violations.push(format!("x = {x}: |{} - {closed}| = {diff:e} > {:e}", quad.value, args.tol));
        }
        report.push(vec![
            Cell::Float(x),
            Cell::Float(closed),
            Cell::Float(quad.value),
            Cell::Float(diff),
            Cell::Float(quad.tail_bound),
            Cell::Float(quad.truncation_height),
            Cell::from(quad.panel_count),
        ]);
    }
    report.set_meta("tolerance", args.tol);
    report.set_meta("max_abs_diff", max_diff);
    let plot = LinePlot {
        title: "Weight integral I(x) = 1/max(x, 1/x)".into(),
        x_label: "x".into(),
        y_label: "I(x)".into(),
        log_x: true,
        series: vec![
            Series { label: "closed".into(), points: rows.iter().map(|r| (r.0, r.1)).collect() },
            Series { label: "quadrature".into(), points: rows.iter().map(|r| (r.0, r.2.value)).collect() },
        ],
        reference_y: None,
    };
    Ok(Outcome {
        summary: vec![format!("weights: {} points, max |diff| = {}", rows.len(), format_float(max_diff))],
        report,
        violations,
        plot: Some(plot),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_forms() {
        assert_eq!(parse_grid("0, 5,10").unwrap(), vec![0.0, 5.0, 10.0]);
        assert_eq!(parse_grid("-1:1:5").unwrap(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("2:3:1").unwrap(), vec![2.0]);
        assert!(parse_grid("1:2:0").is_err());
        assert!(parse_grid("a,b").is_err());
    }
}
