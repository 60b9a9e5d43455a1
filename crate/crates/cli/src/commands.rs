use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

use shapeorbit::bounds::{bound_diagram, sim_sandwich, BoundReport, FunctionalProfile};
use shapeorbit::convex::circumball::certificate_residual;
use shapeorbit::convex::generators::{
    make_apex_over_chord, make_ball_polygon, make_cap, make_random_body, make_random_cloud_3d, make_refined_pair,
    make_regular_simplex, make_reuleaux_triangle, make_segment, random_similarity,
};
use shapeorbit::hausdorff::{hausdorff_2d_exact, hausdorff_nd_bounds};
use shapeorbit::io::{body_from_json, body_to_json};
use shapeorbit::sim_distance::rho_g;
use shapeorbit::{
    check_all, circumball, d_dil, d_sim, diameter, inradius, pseudometric, width_2d, Body, MetricOptions,
    OrbitMetricResult, Vector,
};

use crate::error::CliError;
use crate::output::{emit, fmt_num, to_json};
use crate::{Format, GenKind, OutArgs};

fn read_body(path: &Path) -> Result<Body, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    body_from_json(&text).map_err(|source| CliError::Body {
        path: path.to_path_buf(),
        source,
    })
}

fn metric_opts(tol: f64) -> Result<MetricOptions, CliError> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    Ok(MetricOptions::with_tol(tol))
}

#[derive(Serialize)]
struct MetricJson {
    value: f64,
    lower: f64,
    upper: f64,
    gap: f64,
    approx_error: f64,
    optimal_g: Vec<Vec<f64>>,
    evaluations: usize,
    converged: bool,
}

impl From<&OrbitMetricResult> for MetricJson {
    fn from(r: &OrbitMetricResult) -> Self {
        Self {
            value: r.value,
            lower: r.lower(),
            upper: r.upper(),
            gap: r.gap,
            approx_error: r.approx_error,
            optimal_g: r.optimal_g.rows(),
            evaluations: r.evaluations,
            converged: r.converged,
        }
    }
}

pub fn functionals(path: &Path, out: &OutArgs) -> Result<bool, CliError> {
    let body = read_body(path)?;
    let cb = circumball(&body);
    let inc = match inradius(&body) {
        Ok(i) => Some(i),
        Err(shapeorbit::Error::MissingHRep) => None,
        Err(e) => return Err(e.into()),
    };
    let width = if body.dim() == 2 { Some(width_2d(&body)?) } else { None };
    let profile = FunctionalProfile::new(&body)?;
    let json = serde_json::json!({
        "dim": body.dim(),
        "circumball": cb,
        "inradius": inc,
        "diameter": diameter(&body),
        "width": width,
        "normalized": profile,
        "diagram_point": profile.diagram_point(),
        "jung_holds": profile.jung_holds(),
    });
    emit(out.out.as_deref(), &to_json(&json)?)?;
    Ok(true)
}

pub fn metric(k: &Path, l: &Path, tol: f64, out: &OutArgs) -> Result<bool, CliError> {
    let (k, l) = (read_body(k)?, read_body(l)?);
    let r = pseudometric(&k, &l, &metric_opts(tol)?)?;
    emit(out.out.as_deref(), &to_json(&MetricJson::from(&r))?)?;
    Ok(true)
}

pub fn sim(k: &Path, l: &Path, angle_tol: f64, tol: f64, out: &OutArgs) -> Result<bool, CliError> {
    let (k, l) = (read_body(k)?, read_body(l)?);
    let opts = metric_opts(tol)?;
    let ds = d_sim(&k, &l, angle_tol)?;
    let dd = d_dil(&k, &l)?;
    let m = pseudometric(&k, &l, &opts)?;
    let sandwich = sim_sandwich(
        (m.lower(), m.upper()),
        &FunctionalProfile::new(&k)?,
        &FunctionalProfile::new(&l)?,
    );
    let json = serde_json::json!({
        "d_sim": ds,
        "d_dil": dd,
        "rho": rho_g(&ds),
        "metric": MetricJson::from(&m),
        "sandwich": sandwich.map(|(lo, hi)| serde_json::json!({"lower": lo, "upper": hi})),
    });
    emit(out.out.as_deref(), &to_json(&json)?)?;
    Ok(true)
}

pub fn bound_report_csv(rep: &BoundReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["bound_name", "applicable", "bound", "metric_lower", "metric_upper", "slack", "pass"])?;
    let opt = |x: Option<f64>| x.map(fmt_num).unwrap_or_default();
    for e in &rep.entries {
        w.write_record([
            e.bound_name.to_string(),
            e.applicable.to_string(),
            opt(e.bound),
            fmt_num(e.metric_lower),
            fmt_num(e.metric_upper),
            opt(e.slack),
            e.pass.map(|p| p.to_string()).unwrap_or_default(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Write(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn bounds(k: &Path, l: &Path, tol: f64, format: Format, out: &OutArgs) -> Result<bool, CliError> {
    let (k, l) = (read_body(k)?, read_body(l)?);
    let rep = check_all(&k, &l, &metric_opts(tol)?)?;
    let text = match format {
        Format::Json => to_json(&rep)?,
        Format::Csv => bound_report_csv(&rep)?,
    };
    emit(out.out.as_deref(), &text)?;
    Ok(rep.all_pass())
}

struct Sample {
    seed: u64,
    vertices: usize,
    body: Body,
    profile: FunctionalProfile,
}

fn sample(seed: u64) -> Result<Sample, CliError> {
    let vertices = 3 + (seed % 10) as usize;
    let body = make_random_body(seed, vertices)?;
    let profile = FunctionalProfile::new(&body)?;
    Ok(Sample {
        seed,
        vertices,
        body,
        profile,
    })
}

pub fn diagram(samples: usize, seed: u64, tol: f64, out: &OutArgs) -> Result<bool, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let opts = metric_opts(tol)?;
    let bodies: Vec<Sample> = (0..samples as u64)
        .into_par_iter()
        .map(|i| sample(seed ^ i))
        .collect::<Result<_, _>>()?;
    let mut rng = SplitMix64::seed_from_u64(seed);
    let partners: Vec<usize> = (0..samples).map(|_| rng.random_range(0..samples)).collect();

    struct Row {
        bound: f64,
        lower: f64,
        upper: f64,
    }
    let rows: Vec<Row> = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<Row, CliError> {
            let (a, b) = (&bodies[i], &bodies[partners[i]]);
            let p = a.profile.diagram_point().expect("planar bodies have an inradius");
            let q = b.profile.diagram_point().expect("planar bodies have an inradius");
            let m = pseudometric(&a.body, &b.body, &opts)?;
            Ok(Row {
                bound: bound_diagram(p, q, 2)?,
                lower: m.lower(),
                upper: m.upper(),
            })
        })
        .collect::<Result<_, _>>()?;

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "index", "seed", "vertices", "r", "D", "in_range", "jung", "partner", "bound", "metric_lower",
        "metric_upper", "pass",
    ])?;
    let mut ok = true;
    for (i, (s, row)) in bodies.iter().zip(&rows).enumerate() {
        let (r, d) = s.profile.diagram_point().expect("planar bodies have an inradius");
        let in_range = r <= 1.0 + 1e-9 && 1.0 - 1e-9 <= d && d <= 2.0 + 1e-9;
        let jung = s.profile.jung_holds();
        let pass = row.lower <= row.bound + 1e-9;
        ok &= in_range && jung && pass;
        w.write_record([
            i.to_string(),
            s.seed.to_string(),
            s.vertices.to_string(),
            fmt_num(r),
            fmt_num(d),
            in_range.to_string(),
            jung.to_string(),
            partners[i].to_string(),
            fmt_num(row.bound),
            fmt_num(row.lower),
            fmt_num(row.upper),
            pass.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Write(e.into_error()))?;
    emit(out.out.as_deref(), &String::from_utf8(bytes).expect("csv output is utf-8"))?;
    Ok(ok)
}

fn need_param(param: Option<f64>, what: &str) -> Result<f64, CliError> {
    param.ok_or_else(|| CliError::Usage(format!("--param {what} is required")))
}

pub fn generate(
    kind: GenKind,
    m: usize,
    dim: usize,
    param: Option<f64>,
    seed: u64,
    vertices: usize,
    out: &OutArgs,
) -> Result<bool, CliError> {
    let body = match kind {
        GenKind::Simplex => make_regular_simplex(dim, 1.0)?,
        GenKind::Cap => make_cap(Vector::new2(need_param(param, "a")?, 0.0), m)?,
        GenKind::Reuleaux => make_reuleaux_triangle(m)?,
        GenKind::Segment => make_segment(),
        GenKind::BallPolygon => make_ball_polygon(m)?,
        GenKind::Apex => make_apex_over_chord(need_param(param, "t")?)?,
        GenKind::Random => make_random_body(seed, vertices)?,
        GenKind::RandomCloud => make_random_cloud_3d(seed, vertices)?,
        GenKind::RefinedOuter => make_refined_pair(need_param(param, "t")?, m)?.outer,
        GenKind::RefinedInner => make_refined_pair(need_param(param, "t")?, m)?.inner,
    };
    emit(out.out.as_deref(), &(body_to_json(&body) + "\n"))?;
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
struct Failure {
    trial: String,
    check: &'static str,
    detail: String,
}

#[derive(Serialize)]
struct VerifySummary {
    seed: u64,
    trials: usize,
    checks_run: usize,
    failures: Vec<Failure>,
}

/// Runs every property check for one trial; returns (checks run, failures).
fn verify_trial(index: usize, seed: u64, opts: &MetricOptions) -> Result<(usize, Vec<Failure>), CliError> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let body = |rng: &mut SplitMix64| make_random_body(rng.random(), rng.random_range(3..=12));
    let (k, l, m) = (body(&mut rng)?, body(&mut rng)?, body(&mut rng)?);
    let g = random_similarity(&mut rng, 2, 0.1, 10.0, 5.0);
    let h = random_similarity(&mut rng, 2, 0.1, 10.0, 5.0);
    let tol = opts.tol;

    let mut checks = 0usize;
    let mut failures = Vec::new();
    let mut check = |name: &'static str, ok: bool, detail: String| {
        checks += 1;
        if !ok {
            failures.push(Failure {
                trial: index.to_string(),
                check: name,
                detail,
            });
        }
    };

    let kl = pseudometric(&k, &l, opts)?;
    let lk = pseudometric(&l, &k, opts)?;
    let moved = pseudometric(&g.apply(&k)?, &h.apply(&l)?, opts)?;
    let km = pseudometric(&k, &m, opts)?;
    let ml = pseudometric(&m, &l, opts)?;
    let kk = pseudometric(&k, &g.apply(&k)?, opts)?;

    let d = (moved.value - kl.value).abs();
    check("invariance", d <= 2.0 * tol + 1e-9, format!("|Δ| = {d:e}"));
    let d = (lk.value - kl.value).abs();
    check("symmetry", d <= 2.0 * tol + 1e-9, format!("|Δ| = {d:e}"));
    check("identity", kk.value <= tol + 1e-9, format!("⊙(K, gK) = {:e}", kk.value));
    check(
        "triangle",
        kl.lower() <= km.upper() + ml.upper() + 1e-9,
        format!("{} > {} + {}", kl.lower(), km.upper(), ml.upper()),
    );
    check("upper_bound_one", kl.value < 1.0, format!("value {}", kl.value));

    let rep = check_all(&k, &l, opts)?;
    let failed: Vec<&str> = rep.failures().map(|e| e.bound_name).collect();
    check("bounds", rep.all_pass(), format!("failed: {failed:?}"));

    let exact = hausdorff_2d_exact(&k, &l)?.upper;
    let sampled = hausdorff_nd_bounds(&k, &l, 4096)?;
    check(
        "hausdorff_oracle",
        sampled.lower <= exact + 1e-12 && exact <= sampled.upper + 1e-12,
        format!("{} not in [{}, {}]", exact, sampled.lower, sampled.upper),
    );
    for b in [&k, &l] {
        let (res, sphere) = certificate_residual(&circumball(b))?;
        check(
            "circumball_certificate",
            res <= 1e-9 && sphere <= 1e-9,
            format!("residuals {res:e}, {sphere:e}"),
        );
        let p = FunctionalProfile::new(b)?;
        check("jung", p.jung_holds(), format!("D/R = {}", p.diameter));
    }
    Ok((checks, failures))
}

fn verify_file(path: &Path, opts: &MetricOptions) -> Result<(usize, Vec<Failure>), CliError> {
    let b = read_body(path)?;
    let p = FunctionalProfile::new(&b)?;
    let mut failures = Vec::new();
    let name = path.display().to_string();
    if !p.jung_holds() {
        failures.push(Failure {
            trial: name.clone(),
            check: "jung",
            detail: format!("D/R = {}", p.diameter),
        });
    }
    let own = pseudometric(&b, &b, opts)?;
    if own.value > opts.tol + 1e-9 {
        failures.push(Failure {
            trial: name,
            check: "identity",
            detail: format!("⊙(K, K) = {:e}", own.value),
        });
    }
    Ok((2, failures))
}

pub fn verify(seed: u64, trials: usize, tol: f64, bodies: &[PathBuf], out: &OutArgs) -> Result<bool, CliError> {
    let opts = metric_opts(tol)?;
    // body files first so a malformed file fails fast with an input error
    let mut results = bodies
        .iter()
        .map(|p| verify_file(p, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let trial_results: Vec<(usize, Vec<Failure>)> = (0..trials)
        .into_par_iter()
        .map(|i| verify_trial(i, seed ^ i as u64, &opts))
        .collect::<Result<_, _>>()?;
    results.extend(trial_results);
    let summary = VerifySummary {
        seed,
        trials,
        checks_run: results.iter().map(|r| r.0).sum(),
        failures: results.into_iter().flat_map(|r| r.1).collect(),
    };
    emit(out.out.as_deref(), &to_json(&summary)?)?;
    Ok(summary.failures.is_empty())
}
