//! One function per subcommand. Each returns the process exit code; any
//! `Err` bubbling out is treated as an input error (exit 2) by `main`.

use crate::common::{
    emit, fmt_f, load_graph, parse_range, resolve_tol, EXIT_OK, EXIT_VERIFY_FAILED,
};
use crate::{Format, MkoArgs, SpectrumArgs, SweepArgs, VerifyArgs, ZetaArgs};
use chiral_spectra::spectral::verify_mapping;
use chiral_spectra::verify::{run_all, VerifyConfig};
use chiral_spectra::walks::{
    correlated_sweep, correlated_walk, example_homogeneous, example_inhomogeneous,
    grover_positive_support, mko_closed_form, mko_sample_grid, mko_sweep, MkoParams,
};
use chiral_spectra::zeta::{
    bass_form, log_series, nb_walk_counts, prime_cycle_product, zeta_reciprocal,
    PRIME_LENGTH_CAP, WALK_LENGTH_CAP,
};
use chiral_spectra::{chiral::ChiralPair, tol, Error, Result, C64};
use serde_json::json;

fn require(value: Option<f64>, name: &'static str) -> Result<f64> {
    value.ok_or(Error::InvalidParameter {
        name,
        detail: "required for this model".into(),
    })
}

fn forbid_graph(args: &SpectrumArgs) -> Result<()> {
    if args.graph.is_some() || args.builtin.is_some() {
        return Err(Error::InvalidParameter {
            name: "graph",
            detail: format!("model {:?} builds its own ring; drop --graph/--builtin", args.model),
        });
    }
    Ok(())
}

fn build_spectrum_pair(args: &SpectrumArgs) -> Result<(String, ChiralPair)> {
    match args.model.as_str() {
        "grover" => {
            let (label, g) = load_graph(&args.graph, &args.builtin)?;
            Ok((format!("grover:{label}"), grover_positive_support(&g)?))
        }
        "correlated" => {
            let (label, g) = load_graph(&args.graph, &args.builtin)?;
            let p = require(args.p, "p")?;
            Ok((format!("correlated:{label}:p={p}"), correlated_walk(&g, p)?))
        }
        "hom-example" => {
            forbid_graph(args)?;
            let p = args.p.unwrap_or(0.6);
            if p.abs() > 1.0 {
                return Err(Error::InvalidParameter {
                    name: "p",
                    detail: format!("shift weight must satisfy |p| <= 1, got {p}"),
                });
            }
            let theta1 = args.theta1.unwrap_or(0.0);
            let phi_angle = args.phi.unwrap_or(0.0);
            let spinor = (
                C64::new(theta1.cos(), 0.0),
                C64::new(theta1.sin(), 0.0),
            );
            let q = C64::from_polar((1.0 - p * p).max(0.0).sqrt(), phi_angle);
            let n = args.grid.unwrap_or(8);
            let a = args.a.unwrap_or(2.0);
            let b = args.b.unwrap_or(1.0);
            let pair = example_homogeneous(spinor, p, q, n, a, b)?;
            Ok((format!("hom-example:n={n}"), pair))
        }
        "inhom-example" => {
            forbid_graph(args)?;
            let alpha = args.a.unwrap_or(1.0);
            let beta = C64::from_polar(args.b.unwrap_or(0.0), args.theta2.unwrap_or(0.0));
            let n = args.grid.unwrap_or(8);
            let pair = example_inhomogeneous(alpha, beta, n)?;
            Ok((format!("inhom-example:n={n}"), pair))
        }
        other => Err(Error::InvalidParameter {
            name: "model",
            detail: format!(
                "unknown model {other:?}; expected grover, correlated, hom-example, or inhom-example"
            ),
        }),
    }
}

pub fn run_spectrum(args: &SpectrumArgs) -> Result<u8> {
    let match_tol = resolve_tol(args.tol, tol::MATCHING)?;
    let (label, pair) = build_spectrum_pair(args)?;
    let report = verify_mapping(&pair, &label, match_tol)?;
    let content = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    emit(&args.out, &content)?;
    if report.is_clean() {
        Ok(EXIT_OK)
    } else {
        if let chiral_spectra::spectral::Verdict::Mismatch(why) = &report.verdict {
            eprintln!("spectrum mismatch: {why}");
        } else {
            eprintln!("spectral bound violated (see bounds block in the report)");
        }
        Ok(EXIT_VERIFY_FAILED)
    }
}

pub fn run_zeta(args: &ZetaArgs) -> Result<u8> {
    let (label, g) = load_graph(&args.graph, &args.builtin)?;
    let max_len = args.l.unwrap_or(6);
    let reciprocal = zeta_reciprocal(&g)?;
    let bass = bass_form(&g)?;
    let identity_match = reciprocal == bass;
    let mut failed = !identity_match;
    let mut notes: Vec<String> = Vec::new();

    let walk_counts = if max_len > WALK_LENGTH_CAP {
        notes.push(format!("walk counts skipped: L exceeds cap {WALK_LENGTH_CAP}"));
        None
    } else {
        match nb_walk_counts(&g, max_len) {
            Ok(counts) => Some(counts),
            Err(Error::DimensionCap { dim, cap }) => {
                notes.push(format!("walk counts skipped: {dim} arcs exceed cap {cap}"));
                None
            }
            Err(e @ Error::WalkCountMismatch { .. }) => {
                notes.push(format!("walk-count cross-check failed: {e}"));
                failed = true;
                None
            }
            Err(e) => return Err(e),
        }
    };

    let census = match prime_cycle_product(&g, max_len.min(PRIME_LENGTH_CAP)) {
        Ok(census) => Some(census),
        Err(Error::DimensionCap { dim, cap }) => {
            notes.push(format!("Euler product skipped: {dim} arcs exceed cap {cap}"));
            None
        }
        Err(e @ Error::EulerProductMismatch { .. }) => {
            notes.push(format!("Euler product cross-check failed: {e}"));
            failed = true;
            None
        }
        Err(e) => return Err(e),
    };

    let content = match args.format {
        Format::Json => {
            let series_len = max_len.min(WALK_LENGTH_CAP);
            let mut doc = serde_json::to_string_pretty(&json!({
                "graph": label,
                "reciprocal": reciprocal.coefficients(),
                "reciprocal_display": reciprocal.to_string(),
                "bass": bass.coefficients(),
                "identity_match": identity_match,
                "walk_counts": walk_counts,
                "log_series": log_series(&reciprocal, series_len),
                "prime_classes": census.as_ref().map(|c| &c.classes_by_length),
                "zeta_series": census.as_ref().map(|c| &c.zeta_series),
                "notes": notes,
            }))
            .expect("zeta report serializes");
            doc.push('\n');
            doc
        }
        Format::Csv => {
            let width = reciprocal.coefficients().len().max(bass.coefficients().len());
            let mut out = String::from("power,reciprocal,bass\n");
            for i in 0..width {
                let r = reciprocal.coefficients().get(i).copied().unwrap_or(0);
                let b = bass.coefficients().get(i).copied().unwrap_or(0);
                out.push_str(&format!("{i},{r},{b}\n"));
            }
            out
        }
    };
    emit(&args.out, &content)?;
    if failed {
        eprintln!("zeta identity failure on {label}");
        Ok(EXIT_VERIFY_FAILED)
    } else {
        Ok(EXIT_OK)
    }
}

pub fn run_mko(args: &MkoArgs) -> Result<u8> {
    if args.grid < 64 {
        return Err(Error::InvalidParameter {
            name: "grid",
            detail: format!("need at least 64 momentum samples, got {}", args.grid),
        });
    }
    let tol_set = resolve_tol(args.tol, tol::MKO_SAMPLING)?;
    let params = MkoParams::new(args.gamma, args.phi, args.theta1, args.theta2)?;
    let set = mko_closed_form(&params)?;
    let samples = mko_sample_grid(&params, args.grid);
    let max_distance = samples
        .iter()
        .flat_map(|(_, eigs)| eigs.iter())
        .map(|&lam| set.distance(lam))
        .fold(0.0_f64, f64::max);
    let contained = max_distance <= tol_set;
    let (gamma0, gamma1) = params.gamma_thresholds();

    let content = match args.format {
        Format::Json => {
            let mut doc = serde_json::to_string_pretty(&json!({
                "gamma": params.gamma(),
                "phi": params.phi(),
                "theta1": params.theta1(),
                "theta2": params.theta2(),
                "m_gamma": params.m_gamma(),
                "big_m_gamma": params.big_m_gamma(),
                "gamma0": gamma0,
                "gamma1": gamma1,
                "regime": set.regime.label(),
                "circle_cos_interval": set.circle_cos_interval,
                "real_intervals": set.real_intervals,
                "grid": args.grid,
                "max_set_distance": max_distance,
                "contained": contained,
            }))
            .expect("mko report serializes");
            doc.push('\n');
            doc
        }
        Format::Csv => {
            let mut out = String::from("xi,re1,im1,re2,im2\n");
            for (xi, [l1, l2]) in &samples {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_f(*xi),
                    fmt_f(l1.re),
                    fmt_f(l1.im),
                    fmt_f(l2.re),
                    fmt_f(l2.im)
                ));
            }
            out
        }
    };
    emit(&args.out, &content)?;
    if contained {
        Ok(EXIT_OK)
    } else {
        eprintln!(
            "containment failure: sampled eigenvalue sits {max_distance:.3e} from the closed-form set (tol {tol_set:.3e})"
        );
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt_f(x: Option<f64>) -> String {
    x.map(fmt_f).unwrap_or_default()
}

pub fn run_sweep(args: &SweepArgs) -> Result<u8> {
    match args.model.as_str() {
        "correlated" => {
            let match_tol = resolve_tol(args.tol, tol::MATCHING)?;
            let (label, g) = load_graph(&args.graph, &args.builtin)?;
            let spec = args.range.as_deref().unwrap_or("0:1:21");
            let ps = parse_range(spec)?;
            let rows = correlated_sweep(&g, &ps, match_tol)?;
            let failed = rows.iter().any(|row| row.verdict_match == Some(false));
            let content = match args.format {
                Format::Json => {
                    let mut doc = serde_json::to_string_pretty(&json!({
                        "model": "correlated",
                        "graph": label,
                        "points": rows
                            .iter()
                            .map(|row| {
                                json!({
                                    "p": row.p,
                                    "b": row.b,
                                    "r": row.r,
                                    "circle_radius": row.circle_radius,
                                    "skipped": row.skipped,
                                    "support": row.support,
                                    "max_containment_distance": row.max_containment_distance,
                                    "verdict_match": row.verdict_match,
                                })
                            })
                            .collect::<Vec<_>>(),
                    }))
                    .expect("sweep report serializes");
                    doc.push('\n');
                    doc
                }
                Format::Csv => {
                    let mut out = String::from(
                        "p,b,r,circle_radius,status,support_lo,support_hi,max_distance,verdict\n",
                    );
                    for row in &rows {
                        let status = match row.skipped {
                            Some(flag) => format!("skipped:{flag}"),
                            None => "ok".to_string(),
                        };
                        let verdict = match row.verdict_match {
                            Some(true) => "match",
                            Some(false) => "mismatch",
                            None => "",
                        };
                        out.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{}\n",
                            fmt_f(row.p),
                            fmt_f(row.b),
                            fmt_f(row.r),
                            opt_f(row.circle_radius),
                            csv_quote(&status),
                            opt_f(row.support.map(|s| s.0)),
                            opt_f(row.support.map(|s| s.1)),
                            opt_f(row.max_containment_distance),
                            verdict
                        ));
                    }
                    out
                }
            };
            emit(&args.out, &content)?;
            Ok(if failed { EXIT_VERIFY_FAILED } else { EXIT_OK })
        }
        "mko" => {
            let tol_set = resolve_tol(args.tol, tol::MKO_SAMPLING)?;
            let theta1 = require(args.theta1, "theta1")?;
            let theta2 = require(args.theta2, "theta2")?;
            let base = MkoParams::new(0.0, args.phi, theta1, theta2)?;
            let spec = args.range.as_deref().unwrap_or("0:2:11");
            let gammas = parse_range(spec)?;
            let grid = args.grid.unwrap_or(128);
            let rows = mko_sweep(&base, &gammas, grid)?;
            let failed = rows.iter().any(|row| row.max_set_distance > tol_set);
            let content = match args.format {
                Format::Json => {
                    let mut doc = serde_json::to_string_pretty(&json!({
                        "model": "mko",
                        "theta1": theta1,
                        "theta2": theta2,
                        "phi": args.phi,
                        "grid": grid,
                        "points": rows
                            .iter()
                            .map(|row| {
                                json!({
                                    "gamma": row.gamma,
                                    "regime": row.regime.label(),
                                    "window": row.window,
                                    "max_set_distance": row.max_set_distance,
                                })
                            })
                            .collect::<Vec<_>>(),
                    }))
                    .expect("sweep report serializes");
                    doc.push('\n');
                    doc
                }
                Format::Csv => {
                    let mut out = String::from("gamma,regime,m,M,max_distance\n");
                    for row in &rows {
                        out.push_str(&format!(
                            "{},{},{},{},{}\n",
                            fmt_f(row.gamma),
                            row.regime.label(),
                            fmt_f(row.window.0),
                            fmt_f(row.window.1),
                            fmt_f(row.max_set_distance)
                        ));
                    }
                    out
                }
            };
            emit(&args.out, &content)?;
            Ok(if failed { EXIT_VERIFY_FAILED } else { EXIT_OK })
        }
        other => Err(Error::InvalidParameter {
            name: "model",
            detail: format!("unknown sweep model {other:?}; expected correlated or mko"),
        }),
    }
}

pub fn run_verify(args: &VerifyArgs) -> Result<u8> {
    let cfg = VerifyConfig {
        seed: args.seed,
        random_pairs: args.random_pairs,
        tol: resolve_tol(args.tol, tol::MATCHING)?,
    };
    let results = run_all(&cfg);
    let passed = results.iter().filter(|r| r.passed).count();
    let first_failure = results.iter().find(|r| !r.passed).map(|r| r.name);

    let content = match args.format {
        Format::Json => {
            let mut doc = serde_json::to_string_pretty(&json!({
                "seed": cfg.seed,
                "random_pairs": cfg.random_pairs,
                "tol": cfg.tol,
                "passed": passed,
                "total": results.len(),
                "first_failure": first_failure,
                "checks": results
                    .iter()
                    .map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail }))
                    .collect::<Vec<_>>(),
            }))
            .expect("verify report serializes");
            doc.push('\n');
            doc
        }
        Format::Csv => {
            let mut out = String::from("name,passed,detail\n");
            for r in &results {
                out.push_str(&format!(
                    "{},{},{}\n",
                    r.name,
                    r.passed,
                    csv_quote(&r.detail)
                ));
            }
            out
        }
    };
    emit(&args.out, &content)?;
    match first_failure {
        None => Ok(EXIT_OK),
        Some(name) => {
            eprintln!("first failing invariant: {name}");
            Ok(EXIT_VERIFY_FAILED)
        }
    }
}
