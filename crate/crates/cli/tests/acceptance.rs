//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p dirac1d-cli --test acceptance`.

use std::process::Command;
use std::time::Instant;

use dirac1d::dirac::{
    default_grid, find_levels, nonrel_limit_report, theorem_b_check, wavefunction, LimitRow, SpectralLevel,
};
use dirac1d::nonrel::nonrel_spectrum;
use dirac1d::quadrature::SymmetricGrid;
use dirac1d::shooting::{oracle_spectrum, ShootingConfig};
use dirac1d::specfun::*;
use dirac1d::{ModelParams, Parity};
use dirac1d_cli::scan::{run_scan, ScanSpec};

type Outcome = Result<String, String>;

fn params(alpha: f64) -> ModelParams {
    ModelParams::from_alpha(alpha).expect("positive alpha")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn order(nu: f64) -> HermiteOrder {
    HermiteOrder::new(nu).expect("finite order")
}

fn airy_fixture() -> Outcome {
    let rho = [2.3381, 4.0879, 5.5206, 6.7867];
    let rho_prime = [1.0188, 3.2482, 4.8201, 6.1633];
    let mut worst = 0.0f64;
    for (kind, table) in [(AiryKind::Ai, rho), (AiryKind::AiPrime, rho_prime)] {
        for (i, want) in table.iter().enumerate() {
            let z = airy_zero(kind, i as u32 + 1).map_err(|e| e.to_string())?;
            let err = (z.value + want).abs();
            ensure(err <= 5e-5, || format!("{kind:?} zero {}: {} vs -{want}", i + 1, z.value))?;
            ensure(z.residual < 1e-10, || format!("{kind:?} zero {} residual {:e}", i + 1, z.residual))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("8 zeros, max |error| {worst:.1e}"))
}

fn nonrel_identity() -> Outcome {
    let p = ModelParams::new(1.0, 1.0).map_err(|e| e.to_string())?;
    let levels = nonrel_spectrum(&p, 8).map_err(|e| e.to_string())?;
    let c = 2f64.powf(-1.0 / 3.0);
    let mut worst = 0.0f64;
    for l in &levels {
        let err = (l.epsilon_tilde - l.zero * c).abs().max((l.epsilon - l.zero * c).abs());
        worst = worst.max(err);
    }
    ensure(levels.len() == 16, || format!("{} levels", levels.len()))?;
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("{} levels, max deviation {worst:.1e}", levels.len()))
}

fn oracle_equivalence() -> Outcome {
    let config = ShootingConfig::default();
    let mut worst = 0.0f64;
    for alpha in [0.5, 1.0, 2.0, 5.0] {
        let p = params(alpha);
        let shot = oracle_spectrum(&p, 6, &config).map_err(|e| format!("alpha={alpha}: {e}"))?;
        for parity in Parity::BOTH {
            let hermite = find_levels(&p, parity, 3).map_err(|e| format!("alpha={alpha}: {e}"))?;
            let oracle: Vec<_> = shot.iter().filter(|o| o.parity == parity).collect();
            ensure(oracle.len() >= 3, || format!("alpha={alpha} {parity}: oracle found {}", oracle.len()))?;
            for (h, o) in hermite.iter().zip(oracle) {
                let rel = ((o.energy - h.energy) / h.energy).abs();
                ensure(rel < 1e-6, || {
                    format!("alpha={alpha} {parity} #{}: |dE|/E = {rel:e}", h.index)
                })?;
                worst = worst.max(rel);
            }
        }
    }
    Ok(format!("24 levels, max |dE|/E {worst:.1e}"))
}

fn describe(rows: &[LimitRow]) -> String {
    rows.iter()
        .map(|r| format!("{}{}:{:+.2}%", &r.parity.as_str()[..1], r.n, 100.0 * r.deviation))
        .collect::<Vec<_>>()
        .join(" ")
}

fn weak_coupling() -> Outcome {
    let at10 = nonrel_limit_report(&params(10.0), 4).map_err(|e| e.to_string())?;
    let at20 = nonrel_limit_report(&params(20.0), 4).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    for r in &at10 {
        if r.deviation.abs() >= 0.02 {
            problems.push(format!("alpha=10 {} n={} at {:+.2}%", r.parity, r.n, 100.0 * r.deviation));
        }
    }
    for (a, b) in at10.iter().zip(&at20) {
        if b.deviation.abs() >= a.deviation.abs() {
            problems.push(format!("alpha=20 {} n={} not below alpha=10", b.parity, b.n));
        }
    }
    let summary = format!("alpha=10 [{}]; alpha=20 [{}]", describe(&at10), describe(&at20));
    if problems.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{}; {summary}", problems.join(", ")))
    }
}

fn smooth_separation() -> Outcome {
    let spec = ScanSpec {
        alpha_min: 0.5,
        alpha_max: 20.0,
        points: 50,
        levels: 4,
    };
    let result = run_scan(&spec, &Default::default());
    ensure(result.failures() == 0, || format!("{} missing relativistic values", result.failures()))?;
    let x = spec.inv_alphas();
    ensure((x[0] - 0.05).abs() < 1e-12 && (x[49] - 2.0).abs() < 1e-12, || "scan range".into())?;
    let mut signs = Vec::new();
    for parity in Parity::BOTH {
        for level in 1..=spec.levels {
            let d: Vec<f64> = result
                .series(parity, level)
                .iter()
                .map(|&(_, rel, nr)| rel.expect("checked above") - nr)
                .collect();
            let significant: Vec<f64> = d.iter().copied().filter(|v| v.abs() > 1e-8).collect();
            let sign = significant.first().map_or(0.0, |v| v.signum());
            ensure(significant.iter().all(|v| v.signum() == sign), || {
                format!("{parity} level {level}: difference changes sign")
            })?;
            // a continuous curve sampled this densely has no isolated jumps:
            // each step stays below the full range of the curve
            let range = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let jump = d.windows(2).fold(0.0f64, |m, w| m.max((w[1] - w[0]).abs()));
            ensure(jump < 0.5 * range, || format!("{parity} level {level}: jump {jump:e} of range {range:e}"))?;
            signs.push(if sign < 0.0 { '-' } else { '+' });
        }
    }
    Ok(format!(
        "{} rows, every level single-signed (signs {})",
        result.rows.len(),
        signs.iter().collect::<String>()
    ))
}

fn specfun_suite() -> Outcome {
    let mut checks = 0usize;
    // three-term recurrence, nu in [0, 60], xi in (0, 12]
    for i in 0..=60 {
        for j in 1..=48 {
            let (nu, xi) = (i as f64 + 0.37 * (j % 3) as f64, 0.25 * j as f64);
            let nu = nu.min(60.0);
            let hp = hermite_h(order(nu + 1.0), xi).map_err(|e| e.to_string())?;
            let h0 = hermite_h(order(nu), xi).map_err(|e| e.to_string())?;
            let hm = hermite_h(order(nu - 1.0), xi).map_err(|e| e.to_string())?;
            let scale = hp.abs().max((2.0 * xi * h0).abs()).max((2.0 * nu * hm).abs());
            let resid = (hp - 2.0 * xi * h0 + 2.0 * nu * hm).abs();
            ensure(resid <= 1e-8 * scale, || format!("recurrence nu={nu} xi={xi}: {:e}", resid / scale))?;
            checks += 1;
        }
    }
    // integer orders collapse to polynomials
    for n in 0..=10usize {
        for j in 0..=48 {
            let xi = 0.25 * j as f64;
            let (mut a, mut b) = (1.0, 2.0 * xi);
            for k in 1..n {
                let c = 2.0 * xi * b - 2.0 * k as f64 * a;
                a = b;
                b = c;
            }
            let want = if n == 0 { 1.0 } else { b };
            let got = hermite_h(order(n as f64), xi).map_err(|e| e.to_string())?;
            let scale = want.abs().max((2.0 * xi).powi(n as i32)).max(1.0);
            ensure((got - want).abs() < 1e-10 * scale, || format!("integer order {n} at {xi}"))?;
            checks += 1;
        }
    }
    // derivative against central differences
    for i in 0..=30 {
        for j in 1..=24 {
            let (nu, xi) = (-0.9 + 2.0 * i as f64, 0.5 * j as f64);
            let step = 1e-5 * (1.0 + xi);
            let f = |x: f64| hermite_h(order(nu), x).map_err(|e| e.to_string());
            let fd = (f(xi + step)? - f(xi - step)?) / (2.0 * step);
            let d = hermite_h_deriv(order(nu), xi).map_err(|e| e.to_string())?;
            let scale = d.abs().max(fd.abs()).max(f(xi)?.abs() * (1.0 + xi));
            ensure((d - fd).abs() <= 1e-6 * scale, || format!("derivative nu={nu} xi={xi}"))?;
            checks += 1;
        }
    }
    // Airy ODE residual is second order in h
    for i in 0..=34 {
        let x = -12.0 + 0.5 * i as f64;
        let ai = |t: f64| airy_ai(t).map_err(|e| e.to_string());
        let (a0, ap) = airy_ai_pair(x).map_err(|e| e.to_string())?;
        let resid = |h: f64| -> Result<f64, String> { Ok((ai(x + h)? - 2.0 * a0 + ai(x - h)?) / (h * h) - x * a0) };
        let predicted = 1e-6 / 12.0 * (2.0 * ap + x * x * a0);
        let (r3, r4) = (resid(1e-3)?, resid(1e-4)?);
        ensure((r3 - predicted).abs() < 0.01 * predicted.abs() + 2e-10, || format!("Airy ODE at x={x}"))?;
        ensure(r4.abs() < r3.abs() / 10.0 + 2e-7, || format!("Airy ODE order at x={x}"))?;
        checks += 1;
    }
    // asymptotic form converges along nu at z = 0.8
    let mut prev = f64::INFINITY;
    for nu in [20.0f64, 40.0, 80.0, 160.0] {
        let xi = 0.8 * (2.0 * nu + 1.0).sqrt();
        let exact = hermite_h_scaled(order(nu), xi).map_err(|e| e.to_string())?;
        let approx = hermite_airy_asymptotic_scaled(order(nu), xi).map_err(|e| e.to_string())?;
        let err = ((approx - exact) / exact).abs();
        ensure(err < prev, || format!("asymptotic error at nu={nu} did not shrink: {err:e}"))?;
        prev = err;
        checks += 1;
    }
    Ok(format!("{checks} checks (recurrence, integer orders, derivative, Airy ODE, asymptotics)"))
}

fn physics_invariants() -> Outcome {
    let mut levels_checked = 0;
    let mut worst_identity = 0.0f64;
    let mut worst_overlap = 0.0f64;
    for alpha in [0.5, 1.0, 2.0, 5.0, 10.0] {
        let p = params(alpha);
        let mut ls: Vec<SpectralLevel> = Vec::new();
        for parity in Parity::BOTH {
            ls.extend(find_levels(&p, parity, 3).map_err(|e| e.to_string())?);
        }
        for l in &ls {
            let tag = format!("alpha={alpha} {} #{}", l.parity, l.index);
            let wf = wavefunction(&p, l, &default_grid(&p, l).map_err(|e| e.to_string())?)
                .map_err(|e| format!("{tag}: {e}"))?;
            let amp = wf.amplitude();
            let n = wf.samples.len();
            let sgn = l.parity.sign();
            for i in 0..n {
                let (s, mirror) = (wf.samples[i], wf.samples[n - 1 - i]);
                let gap = (mirror.v - sgn * s.u).abs().max((mirror.u - sgn * s.v).abs());
                ensure(gap <= 1e-10 * amp, || format!("{tag}: parity relation off by {gap:e}"))?;
            }
            ensure((wf.norm - 1.0).abs() < 1e-8, || format!("{tag}: norm {}", wf.norm))?;
            let (u, v) = (wf.u(), wf.v());
            let (du, dv) = (wf.grid.derivative(&u), wf.grid.derivative(&v));
            for (i, x) in wf.grid.points().enumerate() {
                let mass = p.m() + p.g() * x.abs();
                let r1 = du[i] + mass * u[i] - l.energy * v[i];
                let r2 = -dv[i] + mass * v[i] - l.energy * u[i];
                ensure(r1.abs().max(r2.abs()) < 1e-5 * amp, || format!("{tag}: Dirac residual at x={x}"))?;
            }
            let tb = theorem_b_check(&wf);
            ensure(tb.e_bound_satisfied && l.energy >= p.m(), || format!("{tag}: E = {} below m", l.energy))?;
            let defect = tb.identity_u_defect.max(tb.identity_v_defect);
            ensure(defect < 1e-5, || format!("{tag}: integral identity defect {defect:e}"))?;
            worst_identity = worst_identity.max(defect);
            levels_checked += 1;
        }
        let width = ls
            .iter()
            .map(|l| default_grid(&p, l).map(|g| g.half_width()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?
            .into_iter()
            .fold(0.0, f64::max);
        let grid = SymmetricGrid::new(width, 8001).map_err(|e| e.to_string())?;
        let wfs = ls
            .iter()
            .map(|l| wavefunction(&p, l, &grid))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        for i in 0..wfs.len() {
            for j in 0..i {
                let dens: Vec<f64> = wfs[i]
                    .samples
                    .iter()
                    .zip(&wfs[j].samples)
                    .map(|(a, b)| a.u * b.u + a.v * b.v)
                    .collect();
                let overlap = grid.integrate(&dens).abs();
                ensure(overlap < 1e-6, || format!("alpha={alpha}: overlap ({i},{j}) = {overlap:e}"))?;
                worst_overlap = worst_overlap.max(overlap);
            }
        }
    }
    Ok(format!(
        "{levels_checked} levels, max identity defect {worst_identity:.1e}, max overlap {worst_overlap:.1e}"
    ))
}

fn scan_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("scan{run}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_dirac1d"))
            .args(["scan", "--points", "50", "--levels", "4", "--out"])
            .arg(&path)
            .env_remove("DIRAC1D_NU_BOX")
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("scan run {run} exited with {status}"))?;
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || "scan outputs differ".into())?;
    Ok(format!("two runs, {} identical bytes", outputs[0].len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Airy-zero fixture", airy_fixture),
        ("nonrelativistic spectrum identity", nonrel_identity),
        ("oracle equivalence", oracle_equivalence),
        ("weak-coupling match", weak_coupling),
        ("smooth separation", smooth_separation),
        ("special-function properties", specfun_suite),
        ("physics invariants", physics_invariants),
        ("scan determinism", scan_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.1}s) - {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s) - {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
