use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use auxetolam_core::auxeticity::{
    maximize_auxetic_zone_r0zero, maximize_auxetic_zone_r1zero, r0_auxetic, r0_auxetic_ply, r0_laminate_design,
    region_r0zero, region_r1zero_paal, region_r1zero_taal,
};
use auxetolam_core::laminate::{check_feasible, homogenize_point, r0_preserving_constraint};
use auxetolam_core::micromech::{existence_scan, GridSpec, ScanFamily};
use auxetolam_core::polar::compliance_numeric;
use auxetolam_core::{classify, Error as CoreError, LaminationPoint, PolarStiffness, RegionLabel};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::material::{self, FamilyName, Material};
use crate::report::{self, to_value};
use crate::{stack, svg, Cli, Command, Format, Objective, RegionFamily};

/// Relative tolerance on `R0 T1 = R1^2` for `r0 = 0` plies; material data are
/// usually rounded to a few digits.
pub const R0_IDENTITY_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub tol: f64,
    pub samples: usize,
    pub out: Option<PathBuf>,
    pub formats: Vec<Format>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        if cli.samples < 8 {
            return Err(CliError::Config(format!(
                "--samples must be at least 8, got {}",
                cli.samples
            )));
        }
        if !(cli.tol > 0.0 && cli.tol < 1.0) {
            return Err(CliError::Config(format!("--tol must lie in (0, 1), got {}", cli.tol)));
        }
        let mut formats = cli.format.clone();
        formats.sort_by_key(|f| *f as u8);
        formats.dedup();
        Ok(Self {
            tol: cli.tol,
            samples: cli.samples,
            out: cli.out.clone(),
            formats,
        })
    }

    fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    fn out_dir(&self) -> Result<PathBuf> {
        let dir = self.out.clone().unwrap_or_else(|| PathBuf::from("."));
        fs::create_dir_all(&dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
        Ok(dir)
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let cfg = RunConfig::from_cli(cli)?;
    match &cli.command {
        Command::AnalyzePly { material } => analyze_ply(&cfg, material),
        Command::AnalyzeLaminate { material, stack } => analyze_laminate(&cfg, material, stack),
        Command::Optimize { material, objective } => optimize(&cfg, material, *objective),
        Command::Scan {
            family,
            e_max,
            e_points,
            nu_points,
            vf_points,
            nu_m,
        } => scan(
            &cfg,
            *family,
            GridSpec {
                e_max: *e_max,
                e_points: *e_points,
                nu_points: *nu_points,
                vf_points: *vf_points,
                nu_m: *nu_m,
            },
        ),
        Command::Region { family, tau, second } => region(&cfg, *family, *tau, *second),
    }
}

fn envelope(command: &str, cfg: &RunConfig, args: Value) -> Value {
    json!({
        "tool": {"name": "auxetolam", "version": env!("CARGO_PKG_VERSION")},
        "command": command,
        "config": {"run": to_value(cfg), "args": args},
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Prints the rounded report and, with `--out` and the json format, saves it.
fn emit(cfg: &RunConfig, name: &str, mut report: Value) -> Result<()> {
    report::round_floats(&mut report);
    let text = serde_json::to_string_pretty(&report).unwrap_or_default();
    println!("{text}");
    if cfg.out.is_some() && cfg.wants(Format::Json) {
        write_file(&cfg.out_dir()?.join(format!("{name}.json")), &(text + "\n"))?;
    }
    Ok(())
}

fn material_json(m: &Material) -> Value {
    json!({
        "name": m.name,
        "file": m.path,
        "kind": m.kind,
        "units": m.units,
        "family": m.family,
        "family_source": if m.family_declared { "declared" } else if m.family.is_some() { "detected" } else { "none" },
    })
}

fn r1zero_region(tau: f64, rho: f64) -> Result<Value> {
    let taal = region_r1zero_taal(tau, rho)?;
    let paal = region_r1zero_paal(tau, rho)?;
    let label = if taal.label != RegionLabel::None {
        taal.label
    } else {
        paal.label
    };
    let mut v = json!({
        "family": "r1zero", "tau": tau, "rho": rho, "label": label,
        "taal": to_value(&taal), "paal": to_value(&paal),
    });
    if !matches!(label, RegionLabel::A | RegionLabel::B) && r0_auxetic(tau, rho) {
        v["note"] = json!("with R1^2 = T1 R0 instead of R1 = 0 (an r0 = 0 ply) these (tau, rho) give a TAAL ply");
    }
    Ok(v)
}

fn r0zero_region(tau: f64, sigma: f64) -> Result<Value> {
    let r = region_r0zero(tau, sigma)?;
    Ok(json!({"family": "r0zero", "tau": tau, "sigma": sigma, "label": r.label, "region": to_value(&r)}))
}

fn r0compliance_region(p: &PolarStiffness, tol: f64) -> Result<Value> {
    let auxetic = r0_auxetic_ply(p, R0_IDENTITY_TOL.max(tol))?;
    let (tau, rho) = (p.tau(), p.rho());
    let design = r0_laminate_design(tau, rho).ok();
    Ok(json!({
        "family": "r0compliance", "tau": tau, "rho": rho,
        "identity_mismatch": (p.r0 * p.t1 - p.r1 * p.r1).abs() / (p.r1 * p.r1),
        "auxetic": auxetic,
        "design": design.map(|d| json!({"xi3_lo": d.xi3_lo, "xi3_hi": d.xi3_hi, "lo_open": d.lo_open, "xi1": "xi3^2"})),
    }))
}

fn family_region(p: &PolarStiffness, family: Option<FamilyName>, tol: f64) -> Result<Value> {
    match family {
        Some(FamilyName::R1zero) => r1zero_region(p.tau(), p.rho()),
        Some(FamilyName::R0zero) => r0zero_region(p.tau(), p.sigma()),
        Some(FamilyName::R0compliance) => r0compliance_region(p, tol),
        None => Ok(Value::Null),
    }
}

fn write_svg(cfg: &RunConfig, name: &str, p: &PolarStiffness, label: &str) -> Result<Option<PathBuf>> {
    if !cfg.wants(Format::Svg) {
        return Ok(None);
    }
    let path = cfg.out_dir()?.join(format!("{name}.svg"));
    write_file(&path, &svg::polar_diagrams(p, cfg.samples, label)?)?;
    Ok(Some(path))
}

fn analyze_ply(cfg: &RunConfig, path: &Path) -> Result<()> {
    let m = material::load(path, cfg.tol)?;
    let ply = &m.ply;
    let (_, aux) = report::auxeticity(&ply.polar, cfg.samples)?;
    let (_, sym) = report::symmetry(&ply.polar, cfg.tol);
    let q = &ply.cartesian;
    let mut v = envelope("analyze-ply", cfg, json!({"material": path}));
    v["material"] = material_json(&m);
    v["polar"] = report::polar(&ply.polar);
    v["frame_rotation_deg"] = json!(ply.frame_rotation.to_degrees());
    v["cartesian_kelvin"] = json!({"q11": q.q11, "q12": q.q12, "q16": q.q16, "q22": q.q22, "q26": q.q26, "q66": q.q66});
    v["moduli"] = to_value(&ply.moduli);
    v["dimensionless"] = to_value(&ply.dimensionless(cfg.tol));
    v["symmetry"] = sym;
    v["compliance"] = report::compliance(&ply.polar)?;
    v["auxeticity"] = aux;
    v["region"] = family_region(&ply.polar, m.family, cfg.tol)?;
    let stem = m.stem();
    if let Some(svg) = write_svg(cfg, &format!("{stem}-polar"), &ply.polar, &m.name)? {
        v["svg"] = json!(svg);
    }
    emit(cfg, &format!("{stem}-ply"), v)
}

fn analyze_laminate(cfg: &RunConfig, path: &Path, spec: &str) -> Result<()> {
    let m = material::load(path, cfg.tol)?;
    let stack = stack::parse(spec)?;
    let point = stack.point();
    check_feasible(&point)?;
    let a = homogenize_point(&m.ply.polar, &point);
    let (_, aux) = report::auxeticity(&a, cfg.samples)?;
    let (_, sym) = report::symmetry(&a, cfg.tol);
    let at0 = compliance_numeric(&a, 0.0)?;

    let mut v = envelope("analyze-laminate", cfg, json!({"material": path, "stack": spec}));
    v["material"] = material_json(&m);
    v["ply_polar"] = report::polar(&m.ply.polar);
    v["stack"] = json!({
        "angles_deg": stack.sequence().map(|s| s.angles().iter().map(|a| a.to_degrees()).collect::<Vec<_>>()),
        "lamination_point": to_value(&point),
    });
    v["frame_normalization"] = normalization(&point, cfg.tol);
    v["polar"] = report::polar(&a);
    v["symmetry"] = sym;
    v["compliance"] = report::compliance(&a)?;
    v["moduli_at_0"] = json!({"e1": at0.young_modulus(), "g12": at0.shear_modulus(), "nu12": at0.nu12()});
    v["auxeticity"] = aux;
    if m.family == Some(FamilyName::R0compliance) {
        v["r0_preserving"] = json!(r0_preserving_constraint(&point, cfg.tol.max(1e-12)));
    }
    let stem = m.stem();
    if let Some(svg) = write_svg(
        cfg,
        &format!("{stem}-laminate-polar"),
        &a,
        &format!("{} / {spec}", m.name),
    )? {
        v["svg"] = json!(svg);
    }
    emit(cfg, &format!("{stem}-laminate"), v)
}

fn normalization(point: &LaminationPoint, tol: f64) -> Value {
    let (n, which) = if point.xi4.abs() > tol {
        (point.normalize_xi4(), "xi4")
    } else if point.xi2.abs() > tol {
        (point.normalize_xi2(), "xi2")
    } else {
        return json!({"note": "orthotropic lamination point, no rotation needed", "rotation_deg": 0.0});
    };
    json!({
        "note": format!("frame rotated to make {which} vanish"),
        "rotation_deg": n.rotation.to_degrees(),
        "lamination_point": to_value(&n.point),
    })
}

fn aux_summary(p: &PolarStiffness) -> Result<Value> {
    let r = classify(p)?;
    Ok(json!({
        "classification": r.classification,
        "nu_min": r.nu_min,
        "theta_min_deg": r.theta_min.to_degrees(),
        "delta_alpha_deg": r.delta_alpha.to_degrees(),
    }))
}

fn optimize(cfg: &RunConfig, path: &Path, objective: Objective) -> Result<()> {
    let m = material::load(path, cfg.tol)?;
    let p = m.ply.polar;
    let family = m
        .family
        .ok_or_else(|| CoreError::OutOfRegion("the ply has no special orthotropy (R1 = 0, R0 = 0 or r0 = 0)".into()))?;
    let mut v = envelope("optimize", cfg, json!({"material": path, "objective": objective}));
    v["material"] = material_json(&m);
    v["ply"] = aux_summary(&p)?;
    let (single_ply_optimal, reason) = match family {
        FamilyName::R1zero => {
            let (tau, rho) = (p.tau(), p.rho());
            let opt = maximize_auxetic_zone_r1zero(tau, rho)?;
            let lam = homogenize_point(&p, &LaminationPoint::orthotropic(opt.xi_opt, 0.0));
            v["optimum"] = json!({
                "family": "r1zero", "tau": tau, "rho": rho,
                "region": if opt.taal { RegionLabel::B } else { RegionLabel::C },
                "xi1": opt.xi_opt,
                "angle_ply_deg": [opt.angle_ply_delta.to_degrees(), -opt.angle_ply_delta.to_degrees()],
                "lambda_min": opt.lambda_min,
                "delta_alpha_before_deg": opt.single_ply_delta_alpha.to_degrees(),
                "delta_alpha_after_deg": opt.delta_alpha.to_degrees(),
                "taal": opt.taal,
                "single_ply_optimal": opt.single_ply_optimal,
            });
            v["laminate"] = aux_summary(&lam)?;
            (
                opt.single_ply_optimal,
                "xi1 = 1 (the single ply) already gives the largest auxetic zone",
            )
        }
        FamilyName::R0zero => {
            let opt = maximize_auxetic_zone_r0zero(p.tau(), p.sigma())?;
            v["optimum"] = json!({
                "family": "r0zero", "tau": p.tau(), "sigma": p.sigma(), "region": RegionLabel::P,
                "xi3": opt.xi_opt,
                "delta_alpha_before_deg": opt.single_ply_delta_alpha.to_degrees(),
                "delta_alpha_after_deg": opt.delta_alpha.to_degrees(),
                "single_ply_optimal": true,
            });
            (
                true,
                "the auxetic zone grows with xi3, so xi3 = 1 (the single ply) is optimal",
            )
        }
        FamilyName::R0compliance => {
            let d = r0_laminate_design(p.tau(), p.rho())?;
            v["optimum"] = json!({
                "family": "r0compliance", "tau": p.tau(), "rho": p.rho(),
                "design": {"xi3_lo": d.xi3_lo, "xi3_hi": d.xi3_hi, "lo_open": d.lo_open, "xi1": "xi3^2"},
                "single_ply_optimal": true,
            });
            (
                true,
                "every laminate in the design range is totally auxetic, the zone is already full",
            )
        }
    };
    v["outcome"] = json!(if single_ply_optimal {
        "nothing-to-optimize"
    } else {
        "optimized"
    });
    emit(cfg, &format!("{}-optimize", m.stem()), v)?;
    if single_ply_optimal {
        return Err(CliError::NothingToOptimize(reason.into()));
    }
    Ok(())
}

fn scan(cfg: &RunConfig, family: ScanFamily, grid: GridSpec) -> Result<()> {
    let raster = existence_scan(family, &grid)?;
    let s = raster.summary();
    let verdict = match s.nu_max_member {
        None => "no members".to_string(),
        Some(x) if x < 0.0 => "max member nu < 0".to_string(),
        Some(x) if x > 0.0 => "members with nu > 0".to_string(),
        Some(_) => "max member nu = 0".to_string(),
    };
    let mut v = envelope("scan", cfg, json!({"family": family, "grid": to_value(&grid)}));
    v["family"] = json!(family);
    v["summary"] = to_value(&s);
    v["verdict"] = json!(verdict);
    if cfg.wants(Format::Csv) {
        let path = cfg.out_dir()?.join(format!("{family}.csv"));
        let file = File::create(&path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        raster.write_csv(BufWriter::new(file))?;
        v["csv"] = json!(path);
    }
    emit(cfg, &format!("scan-{family}"), v)
}

fn region(cfg: &RunConfig, family: RegionFamily, tau: f64, second: f64) -> Result<()> {
    let (args, result) = match family {
        RegionFamily::R1zero => (
            json!({"family": family, "tau": tau, "rho": second}),
            r1zero_region(tau, second)?,
        ),
        RegionFamily::R0zero => (
            json!({"family": family, "tau": tau, "sigma": second}),
            r0zero_region(tau, second)?,
        ),
    };
    let mut v = envelope("region", cfg, args);
    v["result"] = result;
    emit(cfg, "region", v)
}
