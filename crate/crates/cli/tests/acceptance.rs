//! Acceptance criteria, one PASS/FAIL line each. Runs the CLI against the
//! bundled materials and the core library directly.

use std::f64::consts::PI;
use std::process::{exit, Command};
use std::time::Instant;

use auxetolam_core::auxeticity::{
    classify_sign, equivalent_bounds_r0zero, equivalent_bounds_r1zero, min_nu_r0zero_analytic, moduli_profile,
    nu12_profile,
};
use auxetolam_core::laminate::{
    check_feasible, homogenize, homogenize_point, lamination_parameters, make_quasi_isotropic,
};
use auxetolam_core::ply::{r0compliance_ply, r0zero_ply, r1zero_ply};
use auxetolam_core::polar::{compliance_numeric, polar_from_components, DEFAULT_SYMMETRY_TOL};
use auxetolam_core::{polar_to_cartesian, Classification, LaminationPoint, Ply, PolarStiffness, StackingSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

const MATERIALS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/materials");

fn material(n: u8) -> String {
    format!("{MATERIALS}/example{n}.json")
}

/// Runs the CLI, returning the exit code and the parsed stdout report.
fn cli(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_auxetolam"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run cli: {e}"))?;
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    Ok((code, v))
}

fn cli_ok(args: &[&str]) -> Result<Value, String> {
    match cli(args)? {
        (0, v) => Ok(v),
        (c, _) => Err(format!("`auxetolam {}` exited with {c}", args.join(" "))),
    }
}

fn num(v: &Value, path: &str) -> Result<f64, String> {
    path.split('.')
        .try_fold(v, |v, k| match k.parse::<usize>() {
            Ok(i) => v.get(i),
            Err(_) => v.get(k),
        })
        .and_then(Value::as_f64)
        .ok_or_else(|| format!("missing number `{path}`"))
}

fn text<'a>(v: &'a Value, path: &str) -> Result<&'a str, String> {
    path.split('.')
        .try_fold(v, |v, k| v.get(k))
        .and_then(Value::as_str)
        .ok_or_else(|| format!("missing string `{path}`"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Published values are rounded: accept a relative 1e-2 or half a unit in
/// the last printed digit, whichever is larger.
fn rounded(what: &str, actual: f64, printed: &str) -> Check {
    let p: f64 = printed.parse().map_err(|_| format!("bad literal {printed}"))?;
    let decimals = printed.split_once('.').map_or(0, |(_, d)| d.len()) as i32;
    let tol = (1e-2 * p.abs()).max(0.5 * 10f64.powi(-decimals) + 1e-12);
    ensure((actual - p).abs() <= tol, || {
        format!("{what} = {actual}, expected {printed} (tol {tol:e})")
    })
}

fn within(what: &str, actual: f64, expected: f64, tol: f64) -> Check {
    ensure((actual - expected).abs() <= tol, || {
        format!("{what} = {actual}, expected {expected} +- {tol}")
    })
}

fn same(what: &str, actual: &str, expected: &str) -> Check {
    ensure(actual == expected, || format!("{what} = {actual}, expected {expected}"))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_ply(r: &mut ChaCha8Rng) -> PolarStiffness {
    loop {
        let t0 = r.gen_range(1.0..20.0);
        let p = PolarStiffness::new(
            t0,
            t0 * r.gen_range(0.05..1.5),
            t0 * r.gen_range(0.0..0.95),
            t0 * r.gen_range(0.0..0.8),
            r.gen_range(-PI..PI),
            r.gen_range(-PI..PI),
        );
        if let Ok(p) = p {
            return p;
        }
    }
}

fn random_stack(r: &mut ChaCha8Rng) -> StackingSequence {
    let n = r.gen_range(1..24);
    StackingSequence::new((0..n).map(|_| r.gen_range(-PI..PI)).collect()).expect("finite angles")
}

fn c1_example1() -> Check {
    let ply = cli_ok(&["analyze-ply", &material(1)])?;
    within("T0", num(&ply, "polar.t0")?, 10.0, 1e-9)?;
    within("T1", num(&ply, "polar.t1")?, 3.0, 1e-9)?;
    within("R0", num(&ply, "polar.r0")?, 2.0, 1e-9)?;
    let lam = cli_ok(&["analyze-laminate", &material(1), "--stack", "quasiiso"])?;
    rounded("E1A", num(&lam, "moduli_at_0.e1")?, "15")?;
    rounded("G12A", num(&lam, "moduli_at_0.g12")?, "10")?;
    rounded("nu12A", num(&lam, "moduli_at_0.nu12")?, "-0.25")?;
    let p = Ply::from_cartesian(auxetolam_core::CartesianStiffness::orthotropic(18.0, -6.0, 18.0, 16.0))
        .map_err(|e| e.to_string())?;
    let a = homogenize(&p.polar, &make_quasi_isotropic());
    let nu: Vec<f64> = nu12_profile(&a, 360)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|x| x.1)
        .collect();
    let spread = nu.iter().cloned().fold(f64::MIN, f64::max) - nu.iter().cloned().fold(f64::MAX, f64::min);
    ensure(spread < 1e-9, || format!("nu12A varies by {spread:e} over 360 angles"))
}

fn c2_example2() -> Check {
    let ply = cli_ok(&["analyze-ply", &material(2)])?;
    same("region", text(&ply, "region.label")?, "B")?;
    within("admissible lo", num(&ply, "region.taal.admissible.lo")?, 0.0, 1e-12)?;
    rounded("admissible hi", num(&ply, "region.taal.admissible.hi")?, "0.667")?;
    let lam = cli_ok(&["analyze-laminate", &material(2), "--stack", "angleply:15"])?;
    within("xi1", num(&lam, "stack.lamination_point.xi1")?, 0.5, 1e-6)?;
    same("angle-ply class", text(&lam, "auxeticity.classification")?, "TAAL")?;
    let qi = cli_ok(&["analyze-laminate", &material(2), "--stack", "quasiiso"])?;
    rounded("E1A", num(&qi, "moduli_at_0.e1")?, "13.3")?;
    rounded("nu12A", num(&qi, "moduli_at_0.nu12")?, "-0.33")
}

fn c3_example3() -> Check {
    let ply = cli_ok(&["analyze-ply", &material(3)])?;
    let (tau, rho) = (num(&ply, "region.tau")?, num(&ply, "region.rho")?);
    within("tau", tau, 0.6, 1e-6)?;
    within("rho", rho, 0.3, 1e-6)?;
    same("region", text(&ply, "region.label")?, "C")?;
    ensure(rho < (2.0 * tau - 1.0).sqrt(), || {
        "expected rho < sqrt(2 tau - 1)".into()
    })?;
    let (code, opt) = cli(&["optimize", &material(3)])?;
    ensure(code == 4, || format!("optimize exited with {code}, expected 4"))?;
    same("outcome", text(&opt, "outcome")?, "nothing-to-optimize")?;
    ensure(opt["optimum"]["single_ply_optimal"] == Value::Bool(true), || {
        "single ply not optimal".into()
    })
}

fn c4_example4() -> Check {
    let ply = cli_ok(&["analyze-ply", &material(4)])?;
    within("ply delta alpha", num(&ply, "auxeticity.delta_alpha_deg")?, 25.2, 0.2)?;
    rounded("ply nu_min", num(&ply, "auxeticity.nu_min")?, "-0.15")?;
    let opt = cli_ok(&["optimize", &material(4)])?;
    within("xi1", num(&opt, "optimum.xi1")?, 0.632, 0.002)?;
    within("delta", num(&opt, "optimum.angle_ply_deg.0")?, 12.7, 0.1)?;
    within(
        "delta alpha before",
        num(&opt, "optimum.delta_alpha_before_deg")?,
        25.2,
        0.2,
    )?;
    within(
        "delta alpha after",
        num(&opt, "optimum.delta_alpha_after_deg")?,
        27.5,
        0.2,
    )?;
    within("laminate nu_min", num(&opt, "laminate.nu_min")?, -0.09, 0.01)
}

fn c5_example5() -> Check {
    let ply = cli_ok(&["analyze-ply", &material(5)])?;
    ensure(ply["symmetry"]["r0_zero"] == Value::Bool(true), || {
        "R0 = 0 not detected".into()
    })?;
    within("sigma", num(&ply, "region.sigma")?, 0.2, 1e-9)?;
    within("tau", num(&ply, "region.tau")?, 0.2, 1e-9)?;
    same("region", text(&ply, "region.label")?, "T")?;
    same("ply class", text(&ply, "auxeticity.classification")?, "TAAL")?;
    for xi3 in [0.0f64, 0.5, 1.0] {
        // any feasible xi1: R0 = 0 makes it irrelevant
        let xi1 = (2.0 * xi3 * xi3 - 1.0).max(0.0);
        let lam = cli_ok(&[
            "analyze-laminate",
            &material(5),
            "--stack",
            &format!("xi:({xi1},0,{xi3},0)"),
        ])?;
        same(
            &format!("class at xi3 = {xi3}"),
            text(&lam, "auxeticity.classification")?,
            "TAAL",
        )?;
    }
    Ok(())
}

fn c6_example6() -> Check {
    let ply = cli_ok(&["analyze-ply", &material(6)])?;
    within("sigma", num(&ply, "region.sigma")?, 0.4, 1e-9)?;
    within("tau", num(&ply, "region.tau")?, 0.6, 1e-9)?;
    same("region", text(&ply, "region.label")?, "P")?;
    let analytic = min_nu_r0zero_analytic(0.6, 0.4, 1.0).ok_or("no analytic minimum")?;
    rounded("analytic nu_min", analytic.value, "-0.336")?;
    within("analytic theta", analytic.theta.to_degrees(), 35.8, 0.2)?;
    rounded("ply nu_min", num(&ply, "auxeticity.nu_min")?, "-0.336")?;
    within("ply theta", num(&ply, "auxeticity.theta_min_deg")?, 35.8, 0.2)?;
    within("ply delta alpha", num(&ply, "auxeticity.delta_alpha_deg")?, 56.0, 0.5)?;
    let lam = cli_ok(&["analyze-laminate", &material(6), "--stack", "xi:(0,0,0.707,0)"])?;
    within("laminate nu_min", num(&lam, "auxeticity.nu_min")?, -0.066, 0.005)?;
    within("laminate theta", num(&lam, "auxeticity.theta_min_deg")?, 41.8, 0.3)?;
    within(
        "laminate delta alpha",
        num(&lam, "auxeticity.delta_alpha_deg")?,
        37.8,
        0.3,
    )
}

fn c7_example7() -> Check {
    let ply = cli_ok(&["analyze-ply", &material(7)])?;
    ensure(ply["symmetry"]["compliance_r0_zero"] == Value::Bool(true), || {
        "r0 = 0 not detected".into()
    })?;
    let (r0c, t0c) = (num(&ply, "compliance.r0")?, num(&ply, "compliance.t0")?);
    ensure(r0c < 1e-9 * t0c, || format!("r0 = {r0c:e}"))?;
    ensure(num(&ply, "region.identity_mismatch")? < 1e-3, || "R0 T1 != R1^2".into())?;
    same("ply class", text(&ply, "auxeticity.classification")?, "TAAL")?;
    rounded("R1", num(&ply, "polar.r1")?, "6.481")?;

    let lam = cli_ok(&["analyze-laminate", &material(7), "--stack", "xi:(0.7056,0,0.84,0)"])?;
    same("laminate class", text(&lam, "auxeticity.classification")?, "TAAL")?;
    let (r0a, t0a) = (num(&lam, "compliance.r0")?, num(&lam, "compliance.t0")?);
    ensure(r0a < 1e-9 * t0a, || format!("laminate r0 = {r0a:e}"))?;

    let qi = cli_ok(&["analyze-laminate", &material(7), "--stack", "quasiiso"])?;
    same(
        "quasi-isotropic class",
        text(&qi, "auxeticity.classification")?,
        "NonAuxetic",
    )?;
    rounded("nu12A", num(&qi, "moduli_at_0.nu12")?, "0.166")?;
    rounded("E1A", num(&qi, "moduli_at_0.e1")?, "23.333")?;
    rounded("G12A", num(&qi, "moduli_at_0.g12")?, "10")?;

    let p = r0compliance_ply(0.7, 0.6, 10.0).map_err(|e| e.to_string())?;
    let g: Vec<f64> = moduli_profile(&p, 720)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|m| m.g12)
        .collect();
    let spread = g.iter().cloned().fold(f64::MIN, f64::max) - g.iter().cloned().fold(f64::MAX, f64::min);
    ensure(spread < 1e-9 * g[0], || format!("G12 varies by {spread:e}"))
}

fn c8_equivalence() -> Check {
    let mut r = rng(81);
    let mut bad = 0;
    for _ in 0..10_000 {
        let (tau, rho) = (r.gen_range(0.01..1.2), r.gen_range(0.01..0.99));
        let ply = Ply::from_polar(
            r1zero_ply(tau, rho, r.gen_range(0.5..50.0)).map_err(|e| e.to_string())?,
            DEFAULT_SYMMETRY_TOL,
        )
        .map_err(|e| e.to_string())?;
        let v = equivalent_bounds_r1zero(&ply, DEFAULT_SYMMETRY_TOL).map_err(|e| e.to_string())?;
        bad += v.iter().filter(|v| !v.unanimous()).count();

        let sigma: f64 = r.gen_range(0.01..0.7);
        let tau = 2.0 * sigma * sigma + r.gen_range(0.001..1.2);
        let ply = Ply::from_polar(
            r0zero_ply(tau, sigma, r.gen_range(0.5..50.0)).map_err(|e| e.to_string())?,
            DEFAULT_SYMMETRY_TOL,
        )
        .map_err(|e| e.to_string())?;
        let v = equivalent_bounds_r0zero(&ply, DEFAULT_SYMMETRY_TOL).map_err(|e| e.to_string())?;
        bad += v.iter().filter(|v| !v.unanimous()).count();
    }
    ensure(bad == 0, || format!("{bad} disagreements"))
}

/// Brute force: invert the rotated stiffness at 3601 directions.
fn sampled_class(p: &PolarStiffness) -> Result<Classification, String> {
    let n = 3601;
    let mut neg = 0;
    for k in 0..n {
        let c = compliance_numeric(p, k as f64 * PI / n as f64).map_err(|e| e.to_string())?;
        neg += usize::from(c.nu12() < 0.0);
    }
    Ok(match neg {
        0 => Classification::NonAuxetic,
        x if x == n => Classification::Taal,
        _ => Classification::Paal,
    })
}

fn c9_oracle() -> Check {
    let mut r = rng(91);
    let mut plies: Vec<PolarStiffness> = (0..1000).map(|_| random_ply(&mut r)).collect();
    for n in 1..=7 {
        let v = cli_ok(&["analyze-ply", &material(n)])?;
        let p = |k: &str| num(&v, &format!("polar.{k}"));
        let ply = PolarStiffness::new(
            p("t0")?,
            p("t1")?,
            p("r0")?,
            p("r1")?,
            p("phi0_deg")?.to_radians(),
            p("phi1_deg")?.to_radians(),
        )
        .map_err(|e| e.to_string())?;
        plies.push(ply);
    }
    let mut mismatches = 0;
    for p in &plies {
        let (class, _) = classify_sign(p).map_err(|e| e.to_string())?;
        mismatches += usize::from(class != sampled_class(p)?);
    }
    ensure(mismatches == 0, || {
        format!("{mismatches} mismatches over {} plies", plies.len())
    })
}

fn c10_scans() -> Check {
    for family in ["r1zero-taal", "r1zero-paal", "r0zero-taal", "r0zero-paal"] {
        let start = Instant::now();
        let v = cli_ok(&["scan", family])?;
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < 30.0, || format!("{family} took {secs:.1} s"))?;
        ensure(num(&v, "summary.members")? > 0.0, || format!("{family}: no members"))?;
        let max_nu = num(&v, "summary.nu_max_member")?;
        if family == "r0zero-paal" {
            ensure(max_nu > 0.0, || format!("{family}: no member with nu > 0"))?;
        } else {
            ensure(max_nu < 0.0, || format!("{family}: member with nu = {max_nu}"))?;
        }
    }
    Ok(())
}

fn c11_properties() -> Check {
    let mut r = rng(111);
    for _ in 0..1000 {
        let p = random_ply(&mut r);
        let back = polar_from_components(&polar_to_cartesian(&p, 0.0));
        for (a, b) in [(back.t0, p.t0), (back.t1, p.t1), (back.r0, p.r0), (back.r1, p.r1)] {
            ensure((a - b).abs() < 1e-12 * p.t0, || format!("roundtrip {a} vs {b}"))?;
        }
        let rot = polar_from_components(&polar_to_cartesian(&p, r.gen_range(-PI..PI)));
        for (a, b) in [(rot.t0, p.t0), (rot.t1, p.t1), (rot.r0, p.r0), (rot.r1, p.r1)] {
            ensure((a - b).abs() < 1e-10 * p.t0, || format!("rotation {a} vs {b}"))?;
        }
        let s = random_stack(&mut r);
        let a = homogenize(&p, &s);
        ensure(
            (a.t0 - p.t0).abs() <= 1e-15 * p.t0 && (a.t1 - p.t1).abs() <= 1e-15 * p.t0,
            || "T0/T1 not conserved".into(),
        )?;
        let x = lamination_parameters(&s);
        check_feasible(&x).map_err(|e| e.to_string())?;
        // the homogenized tensor built from the point matches the stack
        let b = homogenize_point(&p, &LaminationPoint::new(x.xi1, x.xi2, x.xi3, x.xi4));
        ensure((a.r0 - b.r0).abs() < 1e-12 * p.t0, || "point and stack disagree".into())?;
    }
    for _ in 0..10_000 {
        let (tau, rho) = (r.gen_range(0.01..1.5), r.gen_range(0.01..0.99));
        let p = r0compliance_ply(tau, rho, 1.0).map_err(|e| e.to_string())?;
        let (class, _) = classify_sign(&p).map_err(|e| e.to_string())?;
        ensure(class != Classification::Paal, || {
            format!("r0 ply ({tau}, {rho}) is PAAL")
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("example 1 pipeline and quasi-isotropic laminate", c1_example1),
        ("example 2 set B, angle-ply TAAL, quasi-isotropic laminate", c2_example2),
        ("example 3 set C, single ply optimal", c3_example3),
        ("example 4 zone optimization", c4_example4),
        ("example 5 R0 = 0, set T, stack independence", c5_example5),
        ("example 6 set P, ply and laminate minima", c6_example6),
        ("example 7 r0 = 0 ply and laminates", c7_example7),
        ("bound formulations agree", c8_equivalence),
        ("sign classifier matches sampled compliance", c9_oracle),
        ("existence scans on the default grid", c10_scans),
        ("property suite", c11_properties),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("PASS {:>2}  {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2}  {name}: {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        exit(1);
    }
}
