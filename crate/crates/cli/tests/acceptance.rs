//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run alone with `cargo test -p ptspec --test acceptance`.

use std::f64::consts::{LN_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use ptspec_core::analytic::{bound_energies, normalize, table1_wavefunction, zero_mode, Partner};
use ptspec_core::numerics::quadrature::integrate_line;
use ptspec_core::numerics::{apply, make_grid, Grid, SampledWavefunction};
use ptspec_core::special::hyp2f1;
use ptspec_core::susy::{
    make_superpotential, partner_potentials, scarf2_potentials, scarf2_superpotential, smooth_fn, Interval,
    ScarfParams, Superpotential,
};
use ptspec_core::verify::{
    check_pt, default_grid, intertwine_closed, intertwine_sampled, legendre_residuals, overlap_defect,
    partner_operator, solve_partner,
};
use ptspec_core::Complex64;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn table_params(mu: f64) -> ScarfParams {
    ScarfParams::new(mu, -2.5 * mu).unwrap()
}

fn table_grid(mu: f64) -> Grid {
    make_grid(16.0 / mu, 4001).unwrap()
}

fn partner2_energies(mu: f64) -> Outcome {
    let p = table_params(mu);
    let start = Instant::now();
    let sol = solve_partner(p, &table_grid(mu), Partner::Partner2, true).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let found = sol.reported.bound_energies();
    let expected: Vec<f64> = bound_energies(mu, 3.0).iter().map(|s| s.energy).collect();
    let worst = found
        .iter()
        .zip(&expected)
        .map(|(e, x)| (e - x).norm())
        .fold(0.0, f64::max);
    let values: Vec<String> = found.iter().map(|e| format!("{:.9}", e.re)).collect();
    ensure(
        found.len() == 2 && worst < 1e-6 && secs < 5.0,
        format!(
            "mu = {mu}: E = [{}], max error {worst:.2e}, {secs:.2} s",
            values.join(", ")
        ),
    )
}

fn partner1_energies(mu: f64) -> Outcome {
    let p = table_params(mu);
    let start = Instant::now();
    let sol = solve_partner(p, &table_grid(mu), Partner::Partner1, true).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let found = sol.reported.bound_energies();
    let mut expected: Vec<f64> = bound_energies(mu, 3.0).iter().map(|s| s.energy).collect();
    expected.push(0.0);
    let max_im = found.iter().map(|e| e.im.abs()).fold(0.0, f64::max);
    let worst = found
        .iter()
        .zip(&expected)
        .map(|(e, x)| (e.re - x).abs())
        .fold(0.0, f64::max);
    ensure(
        found.len() == 3 && max_im < 1e-8 && worst < 1e-6 && secs < 10.0,
        format!(
            "mu = {mu}: {} levels, max |Im E| {max_im:.2e}, max Re error {worst:.2e}, {secs:.2} s",
            found.len()
        ),
    )
}

fn zero_mode_checks(mu: f64) -> Outcome {
    let p = table_params(mu);
    let z = zero_mode(p);
    let mut res = Vec::new();
    for h in [0.008 / mu, 0.004 / mu] {
        let g = Grid::with_spacing(64.0 / mu, h).unwrap();
        let psi = SampledWavefunction::sample(&g, |x| z.evaluate(x));
        let op = partner_operator(p, &g, Partner::Partner1).unwrap();
        res.push(apply(&op, &psi).unwrap().norm() / psi.norm());
    }
    let ratio = res[0] / res[1];
    let kappa = z.decay_rate();
    let l1 = integrate_line(|x| z.evaluate(x).norm(), kappa, 1e-12);
    let l2 = integrate_line(|x| z.evaluate(x).norm_sqr(), 2.0 * kappa, 1e-12);
    let n = normalize(&z, mu).map_err(|e| e.to_string())?;
    let n_err = (n - (mu / PI).sqrt()).abs();
    let mu2 = mu * mu;
    ensure(
        res[0] < 5e-4 * mu2
            && res[1] < 1.3e-4 * mu2
            && (3.6..=4.4).contains(&ratio)
            && l1.is_ok()
            && l2.is_ok()
            && n_err < 1e-8,
        format!(
            "mu = {mu}: residuals {:.3e}, {:.3e} (ratio {ratio:.3}), L1 {:?}, L2 {:?}, |N - sqrt(mu/pi)| {n_err:.1e}",
            res[0],
            res[1],
            l1.map(|v| (v * 1e6).round() / 1e6),
            l2.map(|v| (v * 1e6).round() / 1e6)
        ),
    )
}

fn intertwining(mu: f64) -> Outcome {
    let p = table_params(mu);
    let grid = table_grid(mu);
    let u = scarf2_superpotential(p);
    let mut analytic = 0.0f64;
    let mut sampled = 0.0f64;
    for n in 0..2 {
        let psi2 = table1_wavefunction(Partner::Partner2, n, p).unwrap();
        let psi1 = table1_wavefunction(Partner::Partner1, n, p).unwrap();
        let target = SampledWavefunction::sample(&grid, |x| psi1.evaluate(x));
        let mapped = intertwine_closed(&u, &psi2, &grid).map_err(|e| e.to_string())?;
        analytic = analytic.max(overlap_defect(&mapped, &target).unwrap().abs());

        let wide = grid.widened(32.0 / psi2.decay_rate());
        let h2 = partner_operator(p, &wide, Partner::Partner2).unwrap();
        let s2 = SampledWavefunction::sample(&wide, |x| psi2.evaluate(x));
        let e = bound_energies(mu, 3.0)[n].energy;
        let mapped =
            intertwine_sampled(&u, &s2, &h2, Complex64::new(e, 0.0), 5e-4 * mu * mu).map_err(|e| e.to_string())?;
        let target = SampledWavefunction::sample(&wide, |x| psi1.evaluate(x));
        sampled = sampled.max(overlap_defect(&mapped, &target).unwrap().abs());
    }
    ensure(
        analytic < 1e-10 && sampled < 1e-6,
        format!("mu = {mu}: 1 - |overlap| analytic {analytic:.1e}, sampled {sampled:.1e}"),
    )
}

/// `b = A exp(g)` with `g = c cos(k (x - s)) + e (x - s) - d (x - s)^2 / 2`.
#[derive(Debug, Clone, Copy)]
struct ExpFamily {
    amp: f64,
    c: f64,
    k: f64,
    e: f64,
    d: f64,
    s: f64,
}

const HALF_WIDTH: f64 = 4.0;

impl ExpFamily {
    fn random(rng: &mut StdRng, even: bool) -> Self {
        Self {
            amp: rng.random_range(0.2..3.0),
            c: rng.random_range(-1.0..1.0),
            k: rng.random_range(0.2..2.0),
            e: if even { 0.0 } else { rng.random_range(-0.5..0.5) },
            d: rng.random_range(0.1..0.4),
            s: if even { 0.0 } else { rng.random_range(-1.0..1.0) },
        }
    }

    fn superpotential(self) -> Superpotential {
        let Self { amp, c, k, e, d, s } = self;
        let g = move |x: f64| {
            let y = x - s;
            (
                c * (k * y).cos() + e * y - 0.5 * d * y * y,
                -c * k * (k * y).sin() + e - d * y,
                -c * k * k * (k * y).cos() - d,
            )
        };
        let b = move |x: f64| amp * g(x).0.exp();
        let b1 = move |x: f64| {
            let (v, g1, _) = g(x);
            amp * v.exp() * g1
        };
        let b2 = move |x: f64| {
            let (v, g1, g2) = g(x);
            amp * v.exp() * (g1 * g1 + g2)
        };
        make_superpotential(smooth_fn(b, b1, b2), Interval::symmetric(HALF_WIDTH)).expect("admissible b")
    }
}

fn pt_symmetry() -> Outcome {
    let p = table_params(1.0);
    let pair = scarf2_potentials(p);
    let scarf = check_pt(|x| pair.v1(x), &default_grid(&p));
    let grid = make_grid(HALF_WIDTH, 801).unwrap();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut even_pass = 0;
    let mut shifted_fail = 0;
    for _ in 0..50 {
        let even = ExpFamily::random(&mut rng, true);
        let pair = partner_potentials(&even.superpotential());
        even_pass += check_pt(|x| pair.v1(x), &grid).passed as usize;
        let shifted = ExpFamily {
            s: rng.random_range(0.5..1.5),
            ..even
        };
        let pair = partner_potentials(&shifted.superpotential());
        shifted_fail += !check_pt(|x| pair.v1(x), &grid).passed as usize;
    }
    ensure(
        scarf.passed && even_pass == 50 && shifted_fail == 50,
        format!(
            "sech/tanh metric {:.1e} (tolerance {:.2e}); {even_pass}/50 even b pass; {shifted_fail}/50 shifted b fail",
            scarf.metric, scarf.tolerance
        ),
    )
}

fn construction_invariants() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xb0b);
    let (mut max_im, mut max_diff, mut max_constraint) = (0.0f64, 0.0f64, 0.0f64);
    let count = 128;
    for _ in 0..count {
        let u = ExpFamily::random(&mut rng, false).superpotential();
        let pair = partner_potentials(&u);
        for i in 0..=160 {
            let x = -HALF_WIDTH + i as f64 * 0.05;
            max_im = max_im.max(pair.v2_complex(x).im.abs());
            max_diff = max_diff.max((pair.v1(x) - pair.v2_complex(x) - u.u_prime(x) * 2.0).norm());
            max_constraint = max_constraint.max(u.constraint_residual(x));
        }
    }
    ensure(
        max_im == 0.0 && max_diff < 1e-12 && max_constraint < 1e-12,
        format!(
            "{count} random b: max |Im V2| {max_im:e}, max |V1 - V2 - 2U'| {max_diff:.1e}, max constraint {max_constraint:.1e}"
        ),
    )
}

fn scaling_family() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for mu in [2.0, 0.5] {
        let expected: Vec<String> = bound_energies(mu, 3.0)
            .iter()
            .map(|s| format!("{}", s.energy))
            .collect();
        lines.push(format!("mu = {mu} targets [{}, 0]", expected.join(", ")));
        for check in [partner2_energies, partner1_energies, zero_mode_checks, intertwining] {
            let outcome = run_guarded(|| check(mu));
            ok &= outcome.is_ok();
            lines.push(outcome.unwrap_or_else(|e| format!("FAILED {e}")));
        }
    }
    ensure(ok, lines.join("; "))
}

fn bound_counts() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for lambda_bar in [1.5, 2.0, 2.5, 3.0, 4.0] {
        let p = ScarfParams::new(1.0, -(lambda_bar - 0.5)).unwrap();
        let grid = default_grid(&p);
        let expected = bound_energies(1.0, lambda_bar).len();
        let s2 = solve_partner(p, &grid, Partner::Partner2, true).map_err(|e| e.to_string())?;
        let s1 = solve_partner(p, &grid, Partner::Partner1, true).map_err(|e| e.to_string())?;
        let (n2, n1) = (s2.reported.bound().count(), s1.reported.bound().count());
        let zero = s1
            .reported
            .bound_energies()
            .iter()
            .map(|e| e.norm())
            .fold(f64::INFINITY, f64::min);
        ok &= n2 == expected && n1 == expected + 1 && zero < 1e-6;
        parts.push(format!("lambda_bar {lambda_bar}: {n2}/{expected} + zero at {zero:.1e}"));
    }
    ensure(ok, parts.join(", "))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `2F1(-m, b; c; p/q)` summed in exact rational arithmetic.
fn exact_terminating(m: i128, b: i128, c: i128, p: i128, q: i128) -> f64 {
    let (mut num, mut den) = (1i128, 1i128);
    let (mut tn, mut td) = (1i128, 1i128);
    for k in 0..m {
        tn *= (-m + k) * (b + k) * p;
        td *= (c + k) * (k + 1) * q;
        let g = gcd(tn, td);
        tn /= g;
        td /= g;
        num = num * td + tn * den;
        den *= td;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num as f64 / den as f64
}

fn special_functions() -> Outcome {
    let mut worst = 0.0f64;
    for m in 0..=6i128 {
        for c in 1..=6i128 {
            for j in -7..=7i128 {
                let bs: Vec<i128> = if j < 0 {
                    (1..=5).collect()
                } else {
                    (1..=5).map(|n| -n).collect()
                };
                for b in bs {
                    let exact = exact_terminating(m, b, c, j, 8);
                    let got = hyp2f1(-(m as f64), b as f64, c as f64, j as f64 / 8.0).map_err(|e| e.to_string())?;
                    worst = worst.max((got - exact).abs() / exact.abs());
                }
            }
        }
    }
    let ln2 = (hyp2f1(1.0, 1.0, 2.0, -1.0).map_err(|e| e.to_string())? - LN_2).abs();
    let mut ok = worst < 1e-15 && ln2 < 1e-12;
    let mut orders = Vec::new();
    for lambda_bar in [2.0, 3.0] {
        let p = ScarfParams::new(1.0, -(lambda_bar - 0.5)).unwrap();
        let coarse = legendre_residuals(p, &make_grid(16.0, 2001).unwrap()).map_err(|e| e.to_string())?;
        let fine = legendre_residuals(p, &make_grid(16.0, 4001).unwrap()).map_err(|e| e.to_string())?;
        for ((n, rc), (_, rf)) in coarse.iter().zip(&fine) {
            let ratio = rc / rf;
            ok &= (3.6..=4.4).contains(&ratio) && *rf < 5e-4;
            orders.push(format!("lambda_bar {lambda_bar} n{n} {rf:.1e} (x{ratio:.2})"));
        }
    }
    ensure(
        ok,
        format!(
            "terminating max rel error {worst:.1e}, |2F1(1,1;2;-1) - ln 2| {ln2:.1e}, Legendre residuals {}",
            orders.join(", ")
        ),
    )
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ptspec");
    let args = ["verify", "--mu", "1", "--lambda", "-2.5"];
    let a = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
    let b = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
    let identical = a.stdout == b.stdout && !a.stdout.is_empty();
    let codes = (a.status.code(), b.status.code());
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut planted = Vec::new();
    for name in [
        "coarse_grid.conf",
        "truncated_box.conf",
        "unrefined.conf",
        "shallow_level.conf",
    ] {
        let out = Command::new(bin)
            .args(["verify", "--config"])
            .arg(fixtures.join(name))
            .output()
            .map_err(|e| e.to_string())?;
        planted.push((name, out.status.code()));
    }
    ensure(
        identical && codes == (Some(0), Some(0)) && planted.iter().all(|(_, c)| *c == Some(1)),
        format!("repeat runs identical: {identical}, exit codes {codes:?}, planted defects {planted:?}"),
    )
}

fn run_guarded<F: FnOnce() -> Outcome>(f: F) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(outcome) => outcome,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        }
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "bound energies of the real partner",
            Box::new(|| partner2_energies(1.0)),
        ),
        (
            "real spectrum of the complex partner",
            Box::new(|| partner1_energies(1.0)),
        ),
        ("zero mode", Box::new(|| zero_mode_checks(1.0))),
        (
            "intertwining of the listed wavefunctions",
            Box::new(|| intertwining(1.0)),
        ),
        ("PT symmetry", Box::new(pt_symmetry)),
        ("algebraic construction invariants", Box::new(construction_invariants)),
        ("scaling family", Box::new(scaling_family)),
        ("bound-state counts", Box::new(bound_counts)),
        ("special functions", Box::new(special_functions)),
        ("CLI determinism and exit codes", Box::new(cli_contract)),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run_guarded(check);
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2}. {title} [{secs:.1} s]: {detail}", i + 1);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
