use hmf_core::config::parse_coordinates;
use hmf_core::explicit::{avg_density, density_sweep, DensityReport, SupportCheck};
use hmf_core::kloosterman::{kloosterman_sum, kloosterman_sum_twisted, weil_bound, Twist};
use hmf_core::oracle;
use hmf_core::petersson::{delta, dimension_estimate};
use hmf_core::rmt::{density_w, haar_sample_density, prediction_integral, HaarVariant, Side};
use hmf_core::special::{bessel_j_int, bessel_majorant, digamma};
use hmf_core::{Complex64, Error, Group, IdealRep, RunConfig, TotallyRealField};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Command, DensityCmd, OracleCmd, Overrides, PeterssonCmd, RmtCmd, SideArg, SpecialCmd};

/// A CSV table: header plus rows of already formatted cells.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Output {
    pub result: Value,
    pub table: Option<Table>,
}

pub fn apply_overrides(cfg: &mut RunConfig, o: &Overrides) -> Result<(), Error> {
    if let Some(f) = &o.field {
        cfg.field = f.clone();
    }
    if let Some(k) = o.k {
        cfg.k = k;
    }
    if let Some(l) = &o.level {
        cfg.level = parse_coordinates("level", l)?;
    }
    if let Some(p) = o.phi {
        cfg.phi = p;
    }
    if let Some(s) = o.sigma {
        cfg.sigma = s;
    }
    if let Some(c) = o.cmax {
        cfg.c_max = c;
    }
    if let Some(x) = o.x {
        cfg.x = x;
    }
    if let Some(y) = o.y {
        cfg.y = y;
    }
    if let Some(t) = o.unit_tol {
        cfg.unit_tol = t;
    }
    if let Some(s) = o.seed {
        cfg.seed = s;
    }
    if o.skip_support_check {
        cfg.support = SupportCheck::Skip;
    }
    Ok(())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialise")
}

fn element(field: &TotallyRealField, key: &'static str, s: &str) -> Result<hmf_core::FieldElement, Error> {
    RunConfig::element(field, key, &parse_coordinates(key, s)?)
}

fn ideal(field: &TotallyRealField, key: &'static str, s: &str) -> Result<IdealRep, Error> {
    RunConfig::ideal(field, key, &parse_coordinates(key, s)?)
}

/// `N1,N2,...` over `Q`; otherwise generators separated by `;`.
fn parse_levels(field: &TotallyRealField, s: &str) -> Result<Vec<IdealRep>, Error> {
    let items: Vec<&str> = if s.contains(';') || field.degree() == 2 {
        s.split(';').collect()
    } else {
        s.split(',').collect()
    };
    let mut levels = Vec::with_capacity(items.len());
    for item in items.iter().map(|t| t.trim()).filter(|t| !t.is_empty()) {
        let level = ideal(field, "levels", item)?;
        if !level.is_squarefree() {
            return Err(Error::InvalidParameter {
                key: "levels",
                reason: format!("level {item} of norm {} is not squarefree", level.norm),
            });
        }
        levels.push(level);
    }
    levels.sort();
    levels.dedup();
    if levels.is_empty() {
        return Err(Error::InvalidParameter {
            key: "levels",
            reason: "no levels given".into(),
        });
    }
    Ok(levels)
}

fn density_row(r: &DensityReport) -> Vec<String> {
    vec![
        r.level_norm.to_string(),
        r.r.to_string(),
        r.total.to_string(),
        r.prediction.to_string(),
        r.gap.to_string(),
        r.certificate_total().to_string(),
    ]
}

const DENSITY_HEADER: [&str; 6] = ["level_norm", "R", "total", "prediction", "gap", "certificates"];

fn haar_variant(group: Group) -> Result<HaarVariant, Error> {
    match group {
        Group::SOeven => Ok(HaarVariant::SOeven),
        Group::SOodd => Ok(HaarVariant::SOodd),
        Group::U => Ok(HaarVariant::U),
        other => Err(Error::InvalidParameter {
            key: "group",
            reason: format!("no sampler for {other}; use u, soeven or soodd"),
        }),
    }
}

pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Output, Error> {
    let plain = |result: Value| Output { result, table: None };
    match command {
        Command::Special(SpecialCmd::Bessel { order, x }) => {
            if !(*x >= 0.0 && x.is_finite()) {
                return Err(Error::InvalidParameter {
                    key: "x",
                    reason: format!("argument {x} must be finite and nonnegative"),
                });
            }
            let value = bessel_j_int(*order, *x);
            let bound = bessel_majorant(*order, *x);
            Ok(plain(json!({
                "order": order,
                "x": x,
                "value": value,
                "bound": bound,
                "ok": value.abs() <= bound * (1.0 + 1e-9),
            })))
        }
        Command::Special(SpecialCmd::Digamma { re, im }) => {
            let z = digamma(Complex64::new(*re, *im));
            Ok(plain(json!({ "re": re, "im": im, "value_re": z.re, "value_im": z.im })))
        }
        Command::Kloosterman(a) => {
            let field = cfg.field()?;
            let nu = element(&field, "nu", &a.nu)?;
            let mu = element(&field, "mu", &a.mu)?;
            let c = element(&field, "c", &a.c)?;
            let twist = if a.twisted { Twist::Different } else { Twist::Plain };
            let s = match twist {
                Twist::Plain => kloosterman_sum(&field, nu, mu, c)?,
                Twist::Different => kloosterman_sum_twisted(&field, nu, mu, c)?,
            };
            let mut out = json!({ "re": s.re, "im": s.im, "abs": s.norm() });
            if a.weil {
                let bound = weil_bound(&field, nu, mu, c, twist)?;
                out["weil_bound"] = json!(bound);
                out["ok"] = json!(s.norm() <= bound * (1.0 + 1e-9));
            }
            Ok(plain(out))
        }
        Command::Petersson(PeterssonCmd::Delta { m, n, .. }) => {
            let field = cfg.field()?;
            let params = cfg.trace_params(&field)?;
            let r = delta(&field, &params, &ideal(&field, "m", m)?, &ideal(&field, "n", n)?)?;
            Ok(plain(to_value(&r)))
        }
        Command::Petersson(PeterssonCmd::Dim { .. }) => {
            let field = cfg.field()?;
            let est = dimension_estimate(&field, cfg.k, &cfg.level(&field)?, cfg.unit_tol, cfg.c_max)?;
            Ok(plain(to_value(&est)))
        }
        Command::Density(DensityCmd::Run { .. }) => {
            let field = cfg.field()?;
            let report = avg_density(&field, &cfg.density_params(&field)?)?;
            let table = Table {
                header: DENSITY_HEADER.to_vec(),
                rows: vec![density_row(&report)],
            };
            Ok(Output {
                result: to_value(&report),
                table: Some(table),
            })
        }
        Command::Density(DensityCmd::Sweep { levels, .. }) => {
            let field = cfg.field()?;
            let levels = parse_levels(&field, levels)?;
            let base = cfg.density_params(&field)?;
            let reports = density_sweep(&field, &base, &levels)?;
            let table = Table {
                header: DENSITY_HEADER.to_vec(),
                rows: reports.iter().map(density_row).collect(),
            };
            Ok(Output {
                result: to_value(&reports),
                table: Some(table),
            })
        }
        Command::Rmt(RmtCmd::Predict { group, side, .. }) => {
            let tf = cfg.test_function()?;
            let side = match side {
                SideArg::Fourier => Side::Fourier,
                SideArg::X => Side::X,
            };
            let prediction = prediction_integral(*group, &tf, side);
            Ok(plain(json!({
                "group": group,
                "test_function": tf,
                "side": side,
                "prediction": prediction,
            })))
        }
        Command::Rmt(RmtCmd::Sample {
            group,
            n,
            m,
            bins,
            range,
            ..
        }) => {
            let h = haar_sample_density(haar_variant(*group)?, *n, *m, *bins, *range, cfg.seed)?;
            let w = density_w(*group);
            let rows = (0..h.counts.len())
                .map(|i| {
                    let mid = 0.5 * (h.edges[i] + h.edges[i + 1]);
                    vec![
                        h.edges[i].to_string(),
                        h.edges[i + 1].to_string(),
                        h.counts[i].to_string(),
                        h.density[i].to_string(),
                        w.smooth(mid).to_string(),
                    ]
                })
                .collect();
            Ok(Output {
                result: to_value(&h),
                table: Some(Table {
                    header: vec!["bin_lo", "bin_hi", "count", "density", "w_smooth"],
                    rows,
                }),
            })
        }
        Command::Oracle(OracleCmd::Tau { n }) => {
            if *n == 0 {
                return Err(Error::InvalidParameter {
                    key: "n",
                    reason: "need n >= 1".into(),
                });
            }
            let tau = oracle::tau(*n)?;
            let normalized = oracle::tau_normalized(*n)?;
            let rows: Vec<Vec<String>> = tau
                .iter()
                .zip(&normalized)
                .enumerate()
                .map(|(i, (t, l))| vec![(i + 1).to_string(), t.to_string(), l.to_string()])
                .collect();
            let tau_str: Vec<String> = tau.iter().map(|t| t.to_string()).collect();
            Ok(Output {
                result: json!({ "n": n, "tau": tau_str, "normalized": normalized }),
                table: Some(Table {
                    header: vec!["n", "tau", "normalized"],
                    rows,
                }),
            })
        }
        Command::Oracle(OracleCmd::Dim { weight, level }) => {
            let dim = oracle::gamma0_dim(*weight, *level)?;
            let newdim = oracle::gamma0_newdim(*weight, *level).ok();
            Ok(plain(
                json!({ "weight": weight, "level": level, "dim": dim, "newdim": newdim }),
            ))
        }
    }
}
