//! Acceptance suite: the project's exit criteria, one test per criterion,
//! each printing a PASS/FAIL line (run with `--nocapture` to see them all).
//!
//! ```text
//! cargo test -p dlat-cli --test acceptance -- --nocapture
//! ```

use std::process::Command;

use rand::Rng;

use dlat::ball3d;
use dlat::cert;
use dlat::field::hept;
use dlat::geom2d::{self, builtin::Builtin};

const BALL_DENSITY: f64 = ball3d::BALL_DENSITY;

fn criterion(n: u32, name: &str, passed: bool, detail: &str) {
    println!(
        "ACCEPTANCE {n:02} {}: {name} — {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {n:02} {name} failed: {detail}");
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dlat"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

#[test]
fn acceptance_01_heptagon_density() {
    // CLI value within 1e-5 of the exact (2/97)(-111 + 492u - 356u^2), and
    // the identity A (2 Delta)^-1 = that expression exactly in the field.
    let (code, text) = run_cli(&["density2d", "--builtin", "heptagon"]);
    let line = text
        .lines()
        .find(|l| l.starts_with("density:"))
        .unwrap_or("")
        .to_string();
    let printed: f64 = line.split_whitespace().nth(1).unwrap_or("0").parse().unwrap();
    let exact = hept::density().to_f64();
    let identity = (&hept::density_from_ratio() - &hept::density()).is_zero();
    let ok = code == 0 && (printed - exact).abs() <= 1e-5 && identity;
    criterion(
        1,
        "heptagon density",
        ok,
        &format!("cli {printed:.6} vs exact {exact:.6}; exact identity residual zero: {identity}"),
    );
}

#[test]
fn acceptance_02_kk_floor() {
    let mut rng = geom2d::random::rng(31415);
    let floor = 3f64.sqrt() / 2.0 - 1e-6;
    let mut worst = f64::INFINITY;
    for _ in 0..500 {
        let n = rng.random_range(3..=30usize);
        let poly = geom2d::random::random_convex_polygon(&mut rng, n.max(3));
        let density = geom2d::double_lattice_density(&poly).density;
        worst = worst.min(density);
    }
    criterion(
        2,
        "density floor sqrt(3)/2 on 500 random bodies",
        worst >= floor,
        &format!("min density {worst:.9} >= {floor:.9}"),
    );
}

#[test]
fn acceptance_03_tilings() {
    let square = geom2d::double_lattice_density(&Builtin::Square.polygon()).density;
    let triangle = geom2d::double_lattice_density(&Builtin::Triangle.polygon()).density;
    let ok = (square - 1.0).abs() <= 1e-6 && (triangle - 1.0).abs() <= 1e-6;
    criterion(
        3,
        "square and triangle tile",
        ok,
        &format!("square {square:.9}, triangle {triangle:.9}"),
    );
}

#[test]
fn acceptance_04_disk() {
    let density = geom2d::double_lattice_density(&Builtin::Disk(4096).polygon()).density;
    let expected = std::f64::consts::PI / 12f64.sqrt();
    criterion(
        4,
        "disk (4096-gon)",
        (density - expected).abs() <= 1e-4,
        &format!("{density:.9} vs pi/sqrt(12) = {expected:.9}"),
    );
}

#[test]
fn acceptance_05_certificate_exact_checks() {
    let null_sum = cert::check_null_sum().passed;
    let space = cert::check_solution_space();
    let ok = null_sum && space.exact_orthogonal && space.rank_on_w == 6;
    criterion(
        5,
        "exact null sum, orthogonality, rank 6 on W",
        ok,
        &format!(
            "sum f_i = 0: {null_sum}; <f_i, u_j> = 0: {}; rank {}",
            space.exact_orthogonal, space.rank_on_w
        ),
    );
}

#[test]
fn acceptance_06_gradient_hessian_fidelity() {
    let mut worst_grad: f64 = 0.0;
    let mut worst_hess: f64 = 0.0;
    for i in 0..7 {
        worst_grad = worst_grad.max(cert::check_gradient(i));
        worst_hess = worst_hess.max(cert::check_hessian(i));
    }
    let ok = worst_grad <= 1e-6 && worst_hess <= 1e-4;
    criterion(
        6,
        "finite differences match the tables",
        ok,
        &format!("gradient {worst_grad:.3e} <= 1e-6; hessian {worst_hess:.3e} <= 1e-4"),
    );
}

#[test]
fn acceptance_07_positive_definite() {
    let (min_eig, per_i) = cert::check_positive_definite();
    criterion(
        7,
        "projected Hessians positive definite",
        min_eig > 0.0,
        &format!("min eigenvalue {min_eig:.6e}; per i {per_i:?}"),
    );
}

#[test]
fn acceptance_08_farkas_and_rank() {
    let farkas = cert::farkas_certificate().expect("certificate LP solvable");
    let cone = cert::check_cone_triviality();
    let ok = farkas.residual <= 1e-10
        && farkas.mu > 0.0
        && cone.rank == 42
        && cone.smallest_sv > 1e-8;
    criterion(
        8,
        "strictly positive Farkas combination; full rank 42",
        ok,
        &format!(
            "residual {:.3e}, min coeff {:.4e}; rank {}, smallest sv {:.3e}",
            farkas.residual, farkas.mu, cone.rank, cone.smallest_sv
        ),
    );
}

#[test]
fn acceptance_09_local_minimum_probe() {
    let report = cert::local_min_probe(271828, 10_000, 1e-3);
    criterion(
        9,
        "10^4 perturbations never beat the heptagon",
        report.violations == 0,
        &format!(
            "min density excess {:.3e} over {} samples",
            report.min_excess, report.samples
        ),
    );
}

#[test]
fn acceptance_10_legendre() {
    let cs = ball3d::coefficients(200);
    let c0_ok = cs[0].value == dlat::field::rat(12, 1);
    let vanish_ok = cs[1].is_zero() && cs[2].is_zero();
    let nonzero_ok = cs.iter().skip(3).all(|c| !c.is_zero());
    let residues = ball3d::residue_pattern_check(100);
    let ok = c0_ok && vanish_ok && nonzero_ok && residues.all_hold();
    criterion(
        10,
        "Legendre coefficients and residue patterns",
        ok,
        &format!(
            "c0 = 12: {c0_ok}; c1 = c2 = 0: {vanish_ok}; c_l != 0 for 3..=200: {nonzero_ok}; residues to 100: {}",
            residues.all_hold()
        ),
    );
}

#[test]
fn acceptance_11_hcp_ball_and_voronoi() {
    let lat = ball3d::build_hcp_double_lattice(&[1.0; 12]).unwrap();
    let mean = lat.mean_volume();
    let hcp_ok = (mean - 4.0 * 2f64.sqrt()).abs() <= 1e-12;

    let ball = ball3d::ConvexBody3::ball(1.0);
    let bound = ball3d::near_ball_bound(&ball, 0.25).unwrap().bound;
    let ball_ok = (bound - BALL_DENSITY).abs() <= 1e-9;

    let cell = ball3d::voronoi_cell_check();
    let cell_ok = (cell.volume - 4.0 * 2f64.sqrt()).abs() <= 1e-9 && cell.faces == 12;
    criterion(
        11,
        "h.c.p. mean volume, ball density, Voronoi cell",
        hcp_ok && ball_ok && cell_ok,
        &format!(
            "mean volume {mean:.12}; ball bound {bound:.9}; cell volume {:.9} with {} faces",
            cell.volume, cell.faces
        ),
    );
}

#[test]
fn acceptance_12_lemma5_formula() {
    let mut rng = geom2d::random::rng(2718);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let mut h = [1.0f64; 12];
        for v in h.iter_mut() {
            *v += rng.random_range(-1e-3..1e-3);
        }
        let sum: f64 = h.iter().sum();
        for v in h.iter_mut() {
            *v *= 12.0 / sum;
        }
        let lat = ball3d::build_hcp_double_lattice(&h).unwrap();
        let formula = ball3d::hcp_mean_volume_formula(
            h[0] + h[3] - 2.0,
            h[1] + h[4] - 2.0,
            h[2] + h[5] - 2.0,
        );
        worst = worst.max((lat.mean_volume() - formula).abs());
    }
    let mut quad_ok = true;
    for _ in 0..1000 {
        let e = [
            rng.random_range(-1e-2..1e-2),
            rng.random_range(-1e-2..1e-2),
            rng.random_range(-1e-2..1e-2),
        ];
        if e.iter().all(|&x| x == 0.0) {
            continue;
        }
        quad_ok &= ball3d::hcp_mean_volume_quadratic(e[0], e[1], e[2]) < 0.0;
    }
    criterion(
        12,
        "perturbed lattice volume matches the closed formula",
        worst <= 1e-10 && quad_ok,
        &format!("worst determinant-vs-formula gap {worst:.3e}; quadratic part negative: {quad_ok}"),
    );
}

#[test]
fn acceptance_13_funk_hecke() {
    use ball3d::harmonics::BasisEval;
    use ball3d::{frame, icosphere, Mat3, Vec3};

    let rotation_average = |f: &dyn Fn(Vec3) -> f64, y: Vec3| -> f64 {
        let x7 = frame()[6];
        let r0 = Mat3::rotation_between(y, x7);
        let steps = 64;
        let mut acc = 0.0;
        for k in 0..steps {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
            let rt = Mat3::about_axis(x7, theta).mul(&r0).transpose();
            acc += frame().iter().map(|&x| f(rt.apply(x))).sum::<f64>() / 12.0;
        }
        acc / steps as f64
    };

    let cs = ball3d::coefficients(10);
    let dirs: Vec<Vec3> = icosphere(1).into_iter().take(12).collect();
    let mut worst: f64 = 0.0;
    for (l, cl) in cs.iter().enumerate().take(11) {
        let idx = l; // zonal representative of each degree
        let f = move |x: Vec3| {
            let mut basis = BasisEval::new(l);
            basis.eval(x);
            basis.value(l, idx)
        };
        let factor = cl.value_f64() / 12.0;
        for &y in &dirs {
            let avg = rotation_average(&f, y);
            worst = worst.max((avg - factor * f(y)).abs());
        }
    }
    // Degree-2 inputs map to zero.
    let d2 = |x: Vec3| x.x * x.y;
    let mut worst_d2: f64 = 0.0;
    for &y in &dirs {
        worst_d2 = worst_d2.max(rotation_average(&d2, y).abs());
    }
    criterion(
        13,
        "zonal convolution matches rotation averages",
        worst <= 1e-6 && worst_d2 <= 1e-10,
        &format!("worst coefficient gap {worst:.3e} for l <= 10; degree-2 leak {worst_d2:.3e}"),
    );
}

#[test]
fn acceptance_14_steiner() {
    // Ball identity at 20 lambdas, exactly.
    let v = 4.0 * std::f64::consts::PI / 3.0;
    let mut worst: f64 = 0.0;
    for k in 0..=20 {
        let t = k as f64 / 20.0;
        worst = worst.max((ball3d::steiner_volume(v, 2.0, 4.0 * std::f64::consts::PI, t) - v).abs());
    }
    let ball_ok = worst <= 1e-12;

    // Cube at lambda = 1/2 against a 10^7-sample Monte-Carlo hull volume.
    let cube = ball3d::cube(1.0);
    let t = 0.5;
    let predicted = ball3d::steiner_volume(cube.volume(), 1.5, cube.surface_area(), t);
    let scaled = cube.scale(t);
    let reach = 1.0 - t;
    let half = t * cube.bounding_radius() + reach + 1e-9;
    let mut rng = geom2d::random::rng(161803);
    let samples = 10_000_000usize;
    let mut hits = 0usize;
    for _ in 0..samples {
        let p = ball3d::vec3(
            rng.random_range(-half..half),
            rng.random_range(-half..half),
            rng.random_range(-half..half),
        );
        if scaled.distance(p) <= reach {
            hits += 1;
        }
    }
    let measured = (2.0 * half).powi(3) * hits as f64 / samples as f64;
    let rel = (predicted - measured).abs() / predicted;
    let cube_ok = (predicted - 2.576696).abs() <= 1e-6 && rel <= 5e-3;
    criterion(
        14,
        "Steiner volumes",
        ball_ok && cube_ok,
        &format!(
            "ball identity within {worst:.2e}; cube at 1/2: {predicted:.6} vs MC {measured:.6} (rel {rel:.2e})"
        ),
    );
}

#[test]
fn acceptance_15_near_ball_box() {
    let ball_vol = 4.0 * std::f64::consts::PI / 3.0;
    let body = ball3d::cuboid(1.0, 1.0, 1.2).normalize_volume(ball_vol);
    let residual = ball3d::min_width_residual(&body);
    let found = ball3d::find_low_eta_rotation(&body, 12).expect("box is not a ball");
    let rotated = body.rotate(&found.rotation);
    let mut beta = f64::INFINITY;
    let mut all_above = true;
    for k in 1..=10 {
        let t = 0.005 * k as f64;
        let out = ball3d::near_ball_bound(&rotated, t).unwrap();
        all_above &= out.bound > BALL_DENSITY;
        beta = beta.min(out.excess / t);
    }
    let ok = all_above && beta > 0.0;
    criterion(
        15,
        "box bound exceeds the ball density with positive slope",
        ok,
        &format!(
            "min-width residual {residual:.3e} (reported); eta {:.6} < w/2 {:.6}; beta {beta:.6}",
            found.eta,
            found.mean_width / 2.0
        ),
    );
}

#[test]
fn acceptance_16_rendering() {
    let out_a = std::env::temp_dir().join(format!("dlat-accept-a-{}.svg", std::process::id()));
    let out_b = std::env::temp_dir().join(format!("dlat-accept-b-{}.svg", std::process::id()));
    for p in [&out_a, &out_b] {
        let (code, _) = run_cli(&[
            "render",
            "--builtin",
            "heptagon",
            "--shells",
            "2",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let identical = std::fs::read(&out_a).unwrap() == std::fs::read(&out_b).unwrap();

    // Pairwise overlap over all rendered copies.
    let body = Builtin::Heptagon.polygon();
    let res = geom2d::double_lattice_density(&body);
    let lattice = geom2d::build_double_lattice(&body, &res.parallelogram).unwrap();
    let copies = geom2d::packing_copies(&body, &lattice, 2);
    let mut worst: f64 = 0.0;
    for i in 0..copies.len() {
        for j in (i + 1)..copies.len() {
            worst = worst.max(geom2d::intersection_area(&copies[i], &copies[j]));
        }
    }
    std::fs::remove_file(out_a).ok();
    std::fs::remove_file(out_b).ok();
    criterion(
        16,
        "rendered packing disjoint and byte-stable",
        identical && worst <= 1e-10,
        &format!("byte-identical: {identical}; max pairwise overlap {worst:.3e}"),
    );
}
