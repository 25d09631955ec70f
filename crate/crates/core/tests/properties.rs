//! Cross-module invariants, checked on randomized instances with fixed
//! seeds, plus the independent-oracle comparisons.
#![allow(clippy::needless_range_loop)]

mod oracle_support;

use minext::certificate::{certificate_from_dual, deficit, is_degenerate, CertificateOptions};
use minext::grid::GridSpec;
use minext::measure::{DiscreteMeasure, SpectralData};
use minext::rational::{rat_int, Rat};
use minext::scalar::Cplx;
use minext::solver::{solution_to_measure, solve_on_grid, SolverOptions};
use minext::special::{nu_family_1d, projection_extrapolation_norm};
use minext::structure::{
    algorithm_failure_diagnosis, gamma_set, lattice_solve, pair_offset, support_structure,
    SupportStructure,
};
use minext::torus::{circle_dist, Frequency, FrequencySet, TorusPoint};
use minext::trig::TrigPolynomial;
use minext::uniqueness::{build_e, has_full_column_rank, recover_amplitudes};
use oracle_support::{adjugate_inverse, bp_phase_lift_oracle, CycloField, QPoly};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c64(re: f64, im: f64) -> Cplx<f64> {
    Cplx::new(re, im)
}

fn random_measure(rng: &mut ChaCha8Rng, d: usize, max_atoms: usize) -> DiscreteMeasure<f64> {
    let n_atoms = rng.gen_range(1..=max_atoms);
    DiscreteMeasure::from_atoms(
        d,
        (0..n_atoms).map(|_| {
            let x = TorusPoint::new((0..d).map(|_| rng.gen_range(0.0..1.0)).collect());
            let w = Cplx::from_polar(rng.gen_range(0.2..1.5), rng.gen_range(0.0..std::f64::consts::TAU));
            (x, w)
        }),
    )
}

fn random_lambda_1d(rng: &mut ChaCha8Rng, max_abs: i64, max_len: usize) -> FrequencySet {
    loop {
        let len = rng.gen_range(2..=max_len);
        let mut elems: Vec<i64> = Vec::new();
        while elems.len() < len {
            let m = rng.gen_range(-max_abs..=max_abs);
            if !elems.contains(&m) {
                elems.push(m);
            }
        }
        if let Ok(set) = FrequencySet::new(elems.into_iter().map(Frequency::new_1d).collect()) {
            return set;
        }
    }
}

// --- measure-level identities ----------------------------------------------

#[test]
fn parseval_pairing_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let lam = random_lambda_1d(&mut rng, 5, 6);
        let mu = random_measure(&mut rng, 1, 4);
        let coeffs: Vec<Cplx<f64>> = (0..lam.len())
            .map(|_| Cplx::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let f = TrigPolynomial::new(lam.clone(), coeffs).unwrap();
        let data = mu.fourier_transform(&lam).unwrap();
        let spectral: Cplx<f64> = f
            .coefficients()
            .iter()
            .zip(data.values())
            .map(|(c, v)| c * v.conj())
            .sum();
        assert!((f.inner_product(&mu) - spectral).norm() < 1e-10);
    }
}

#[test]
fn fourier_intertwines_translation_and_modulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let lam = random_lambda_1d(&mut rng, 6, 5);
        let mu = random_measure(&mut rng, 1, 4);
        let data = mu.fourier_transform(&lam).unwrap();

        let y = TorusPoint::new_1d(rng.gen_range(0.0..1.0));
        let shifted = mu.translate(&y).fourier_transform(&lam).unwrap();
        for (m, (a, b)) in lam.iter().zip(shifted.values().iter().zip(data.values())) {
            let phase = minext::scalar::unit_phase(-m.dot(&y));
            assert!((*a - *b * phase).norm() < 1e-10);
        }

        let n = Frequency::new_1d(rng.gen_range(-3..=3));
        let modded = mu.modulate(&n).fourier_transform(&lam).unwrap();
        for (m, a) in lam.iter().zip(modded.values()) {
            let expect = mu.fourier_coefficient(&m.sub(&n));
            assert!((*a - expect).norm() < 1e-10);
        }
    }
}

#[test]
fn fourier_of_convolution_is_pointwise_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let lam = random_lambda_1d(&mut rng, 4, 5);
        let a = random_measure(&mut rng, 1, 3);
        let b = random_measure(&mut rng, 1, 3);
        let conv = a.convolve(&b).unwrap().fourier_transform(&lam).unwrap();
        let fa = a.fourier_transform(&lam).unwrap();
        let fb = b.fourier_transform(&lam).unwrap();
        for i in 0..lam.len() {
            assert!((conv.value_at(i) - fa.value_at(i) * fb.value_at(i)).norm() < 1e-9);
        }
    }
}

#[test]
fn product_measure_norm_multiplies() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let a = random_measure(&mut rng, 1, 3);
        let b = random_measure(&mut rng, 2, 3);
        let p = a.product(&b);
        assert!((p.tv_norm() - a.tv_norm() * b.tv_norm()).abs() < 1e-10);
        assert_eq!(p.dim(), 3);
    }
}

// --- solver sandwich and the LP oracle on the strict case -------------------

#[test]
fn epsilon_sandwich_on_random_grid_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let opts = SolverOptions::default();
    for _ in 0..25 {
        let lam = random_lambda_1d(&mut rng, 4, 4);
        // measure supported on the solve grid: its norm upper-bounds ε_N
        let n_grid = 12usize;
        let nu = DiscreteMeasure::from_atoms(
            1,
            (0..rng.gen_range(1..=3)).map(|_| {
                let k = rng.gen_range(0..n_grid);
                (
                    TorusPoint::new_1d(k as f64 / n_grid as f64),
                    Cplx::from_polar(rng.gen_range(0.2..1.0), rng.gen_range(0.0..std::f64::consts::TAU)),
                )
            }),
        );
        let data = nu.fourier_transform(&lam).unwrap();
        let (report, _) = solve_on_grid(&data, n_grid, &opts).unwrap();
        assert!(report.converged);
        assert!(report.epsilon_grid >= data.sup_norm() - 1e-6);
        assert!(report.epsilon_grid <= nu.tv_norm() + 1e-6);
    }
}

#[test]
fn off_grid_atom_gives_strict_sandwich_against_the_lp_oracle() {
    // data of δ_{1/3} on {−1,0,1}; the 4-point grid cannot express it, so
    // the grid value exceeds the continuous optimum ε = 1 strictly
    let mu = DiscreteMeasure::dirac(TorusPoint::new_1d(1.0 / 3.0));
    let lam = FrequencySet::range_1d(-1, 1);
    let data = mu.fourier_transform(&lam).unwrap();
    let (report, _) = solve_on_grid(&data, 4, &SolverOptions::default()).unwrap();
    assert!(report.converged);
    let lp = bp_phase_lift_oracle(&data, 4, 8192);
    assert!(
        (report.epsilon_grid - lp).abs() < 1e-6,
        "solver {} vs oracle {}",
        report.epsilon_grid,
        lp
    );
    assert!(report.epsilon_grid > 1.0 + 1e-3, "strictly above ε = 1");
    assert!(data.sup_norm() <= 1.0 + 1e-12);
}

// --- certificate invariants --------------------------------------------------

#[test]
fn validated_certificates_have_nonnegative_deficit_and_bounded_roots() {
    let cases: Vec<DiscreteMeasure<f64>> = vec![
        DiscreteMeasure::from_atoms(
            1,
            [
                (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
                (TorusPoint::new_1d(0.5), c64(-1.0, 0.0)),
            ],
        ),
        DiscreteMeasure::from_atoms(
            1,
            [
                (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
                (TorusPoint::new_1d(0.25), c64(-1.0, 0.0)),
            ],
        ),
        DiscreteMeasure::from_atoms(
            1,
            [
                (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
                (
                    TorusPoint::new_1d(1.0 / 3.0),
                    Cplx::from_polar(1.0, std::f64::consts::PI / 3.0),
                ),
            ],
        ),
    ];
    let lam = FrequencySet::range_1d(-1, 1);
    let opts = SolverOptions::default();
    let copts = CertificateOptions::for_dim(1);
    for mu in cases {
        let data = mu.fourier_transform(&lam).unwrap();
        let (report, grid) = solve_on_grid(&data, 48, &opts).unwrap();
        let cert =
            certificate_from_dual(&report.dual, &lam, &data, report.epsilon_grid, &copts).unwrap();
        let d = deficit(cert.poly());
        assert!(d.min_on_grid(4096) >= -1e-7, "deficit dipped below the bar");

        let sol = solution_to_measure(&report, grid, 1e-5);
        if !is_degenerate(cert.poly(), 1e-3) {
            // the raw grid dual is suboptimal by O(h²), which displaces its
            // zero set by the square root of that; containment holds at the
            // correspondingly loose tolerance
            let pts = minext::certificate::support_from_certificate_1d(cert.poly(), 1e-5).unwrap();
            assert!(pts.len() <= 2 * lam.max_abs() as usize);
            for (x, _) in sol.atoms() {
                assert!(
                    pts.iter().any(|p| p.approx_eq(x, 1e-2)),
                    "atom {x:?} escaped the raw support set {pts:?}"
                );
            }

            // the sharpened certificate pins the zero set to full precision
            let signs: Vec<Cplx<f64>> = sol.atoms().iter().map(|(_, w)| w / w.norm()).collect();
            let support: Vec<TorusPoint<f64>> =
                sol.atoms().iter().map(|(x, _)| x.clone()).collect();
            let refined = minext::certificate::refine_certificate(
                &lam,
                &data,
                &support,
                &signs,
                report.epsilon_grid,
                &copts,
            )
            .unwrap();
            let pts = minext::certificate::support_from_certificate_1d(refined.poly(), 1e-6)
                .unwrap();
            for (x, _) in sol.atoms() {
                assert!(
                    pts.iter().any(|p| p.approx_eq(x, 1e-6)),
                    "atom {x:?} escaped the refined support set {pts:?}"
                );
            }
        }
    }
}

#[test]
fn degenerate_route_agrees_with_the_grid_value() {
    // flat, signed, and 2-d antidiagonal pairs: the failure diagnosis and
    // the grid relaxation pin the same ε
    let lam1 = FrequencySet::range_1d(-1, 1);
    let flat = DiscreteMeasure::from_atoms(
        1,
        [
            (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
            (TorusPoint::new_1d(0.5), c64(1.0, 0.0)),
        ],
    )
    .fourier_transform(&lam1)
    .unwrap();
    let signed = DiscreteMeasure::from_atoms(
        1,
        [
            (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
            (TorusPoint::new_1d(0.5), c64(-1.0, 0.0)),
        ],
    )
    .fourier_transform(&lam1)
    .unwrap();
    let lam2 = FrequencySet::box_nd(2, -1, 1)
        .without(&[Frequency::new(vec![1, -1]), Frequency::new(vec![-1, 1])])
        .unwrap();
    let diag = DiscreteMeasure::from_atoms(
        2,
        [
            (TorusPoint::new(vec![0.0, 0.0]), c64(1.0, 0.0)),
            (TorusPoint::new(vec![0.5, 0.5]), c64(1.0, 0.0)),
        ],
    )
    .fourier_transform(&lam2)
    .unwrap();

    let opts = SolverOptions::default();
    for (data, n) in [(flat, 64usize), (signed, 64), (diag, 16)] {
        let (report, _) = solve_on_grid(&data, n, &opts).unwrap();
        let (eps, gamma) = algorithm_failure_diagnosis(&data, 1e-6).unwrap();
        assert!((eps - report.epsilon_grid).abs() < 1e-6);
        assert!(!gamma.is_empty());
    }
}

// --- structure invariants -----------------------------------------------------

#[test]
fn gamma_contains_the_argmax_and_empties_above_the_sup() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let lam = random_lambda_1d(&mut rng, 5, 6);
        let mu = random_measure(&mut rng, 1, 3);
        let data = mu.fourier_transform(&lam).unwrap();
        let sup = data.sup_norm();
        let tol = 1e-9;
        let gamma = gamma_set(&data, sup, tol).unwrap();
        assert!(!gamma.is_empty(), "argmax must be a member");
        for m in &gamma.members {
            assert!((data.value(m).unwrap().norm() - sup).abs() <= tol);
        }
        let above = gamma_set(&data, sup + 10.0 * tol + 1e-6, tol).unwrap();
        assert!(above.is_empty());
    }
}

#[test]
fn point_supports_satisfy_every_pair_constraint() {
    let s = std::f64::consts::SQRT_2;
    let lam = FrequencySet::range_1d(-1, 1);
    let data = SpectralData::new(
        lam,
        vec![c64(1.0, -1.0), c64(0.0, 0.0), c64(1.0, 1.0)],
    )
    .unwrap();
    let gamma = gamma_set(&data, s, 1e-7).unwrap();
    let structure = support_structure(&gamma, &data).unwrap();
    let SupportStructure::Points(pts) = &structure else {
        panic!("expected points");
    };
    for i in 0..gamma.members.len() {
        for j in (i + 1)..gamma.members.len() {
            let m = &gamma.members[i];
            let n = &gamma.members[j];
            let alpha = pair_offset(m, n, &data).unwrap();
            for x in pts {
                let v = m.sub(n).dot(x) + alpha;
                assert!(circle_dist(v, 0.0) <= 1e-9, "constraint violated by {v}");
            }
        }
    }
}

#[test]
fn random_unimodular_lattices_match_the_adjugate_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let d = rng.gen_range(2..=3);
        // random unimodular integer matrix built from elementary row ops
        let mut p: Vec<Vec<i64>> = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        for _ in 0..8 {
            let a = rng.gen_range(0..d);
            let mut b = rng.gen_range(0..d);
            while b == a {
                b = rng.gen_range(0..d);
            }
            let f = rng.gen_range(-3..=3i64);
            for c in 0..d {
                p[a][c] += f * p[b][c];
            }
        }
        let diffs: Vec<Frequency> = p.iter().map(|r| Frequency::new(r.clone())).collect();
        let beta: Vec<Rat> = vec![rat_int(0); d];
        let lattice = lattice_solve(&diffs, &beta).unwrap();

        let p_rat: Vec<Vec<Rat>> = p
            .iter()
            .map(|r| r.iter().map(|&v| rat_int(v)).collect())
            .collect();
        let inv = adjugate_inverse(&p_rat).expect("unimodular is invertible");
        for k in 0..d {
            for i in 0..d {
                assert_eq!(lattice.generators[k][i], inv[i][k], "q must be P⁻¹ columns");
            }
        }
        assert!(lattice.contains(&lattice.base_point));
    }
}

// --- uniqueness invariants ------------------------------------------------------

#[test]
fn rank_decisions_match_the_cyclotomic_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for n in [5usize, 8, 12] {
        let field = CycloField::new(n);
        for _ in 0..12 {
            let k_count = rng.gen_range(1..=n.min(5));
            let j_count = rng.gen_range(k_count.max(2)..=9);
            // distinct grid nodes and (possibly colliding mod N) frequencies
            let mut nodes: Vec<usize> = Vec::new();
            while nodes.len() < k_count {
                let v = rng.gen_range(0..n);
                if !nodes.contains(&v) {
                    nodes.push(v);
                }
            }
            let mut freqs: Vec<i64> = Vec::new();
            while freqs.len() < j_count {
                let v = rng.gen_range(-12..=12i64);
                if !freqs.contains(&v) {
                    freqs.push(v);
                }
            }
            let lam = FrequencySet::new(freqs.iter().map(|&m| Frequency::new_1d(m)).collect())
                .unwrap();
            let points: Vec<TorusPoint<f64>> = nodes
                .iter()
                .map(|&k| TorusPoint::new_1d(k as f64 / n as f64))
                .collect();
            let e = build_e(&lam, &points).unwrap();
            let numeric = has_full_column_rank(&e, 1e-8);

            let exact_matrix: Vec<Vec<QPoly>> = freqs
                .iter()
                .map(|&m| {
                    nodes
                        .iter()
                        .map(|&k| field.zeta_pow(-(m * k as i64)))
                        .collect()
                })
                .collect();
            let exact = field.rank(&exact_matrix) == k_count;
            assert_eq!(
                numeric, exact,
                "rank disagreement: N={n}, freqs={freqs:?}, nodes={nodes:?}"
            );
        }
    }
}

#[test]
fn recovery_reproduces_data_and_kills_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..50 {
        let lam = random_lambda_1d(&mut rng, 4, 6);
        let k_count = rng.gen_range(1..=lam.len().min(3));
        let mut points: Vec<TorusPoint<f64>> = Vec::new();
        while points.len() < k_count {
            let x = TorusPoint::new_1d(rng.gen_range(0.0..1.0));
            if points.iter().all(|p| p.dist_linf(&x) > 0.05) {
                points.push(x);
            }
        }
        let mu = DiscreteMeasure::from_atoms(
            1,
            points.iter().map(|p| {
                (
                    p.clone(),
                    Cplx::from_polar(rng.gen_range(0.2..1.0), rng.gen_range(0.0..std::f64::consts::TAU)),
                )
            }),
        );
        let data = mu.fourier_transform(&lam).unwrap();
        let e = build_e(&lam, &points).unwrap();
        if !has_full_column_rank(&e, 1e-8) {
            continue;
        }
        let (weights, residual) = recover_amplitudes(&e, &data).unwrap();

        // recovered measure reproduces the data within 10× residual
        let rec = DiscreteMeasure::from_atoms(
            1,
            points.iter().cloned().zip(weights.iter().copied()),
        );
        let rec_data = rec.fourier_transform(&lam).unwrap();
        let dist = rec_data.dist_inf(&data).unwrap();
        assert!(dist <= 10.0 * residual + 1e-10);

        // two extrapolations on the same support with equal data coincide
        let diff_data = SpectralData::new(
            lam.clone(),
            vec![c64(0.0, 0.0); lam.len()],
        )
        .unwrap();
        let (zero_w, _) = recover_amplitudes(&e, &diff_data).unwrap();
        assert!(zero_w.iter().all(|w| w.norm() < 1e-10));
    }
}

// --- positivity invariants ----------------------------------------------------

#[test]
fn caratheodory_matches_moments_of_random_positive_measures() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..50 {
        let n_atoms = rng.gen_range(1..=3);
        let mu = DiscreteMeasure::from_atoms(
            1,
            (0..n_atoms).map(|_| {
                (
                    TorusPoint::new_1d(rng.gen_range(0.0..1.0)),
                    c64(rng.gen_range(0.1..2.0), 0.0),
                )
            }),
        );
        let half = rng.gen_range(1..=3usize);
        let lam = FrequencySet::range_1d(-(half as i64), half as i64);
        let data = mu.fourier_transform(&lam).unwrap();
        let window = minext::positivity::toeplitz_window(&data, 0, half, 1e-9).unwrap();
        assert!(minext::positivity::is_pd_extendable(&window, 1e-9));
        let nu = minext::positivity::caratheodory_atoms(&window).unwrap();
        assert!(nu.is_positive(1e-9));
        assert!(nu.atoms().len() <= half + 1);
        for k in 0..=half {
            let m = Frequency::new_1d(k as i64);
            let delta = (nu.fourier_coefficient(&m) - data.value(&m).unwrap()).norm();
            assert!(delta <= 1e-7, "moment {k} off by {delta}");
        }
    }
}

// --- special-measure invariants --------------------------------------------------

#[test]
fn nu_family_coefficients_follow_the_divisibility_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for k in 2..=6usize {
        let y: f64 = rng.gen_range(0.0..1.0);
        let nu = nu_family_1d(y, k).unwrap();
        for m in -7..=7i64 {
            let got = nu.fourier_coefficient(&Frequency::new_1d(m));
            let expect = if m.rem_euclid(k as i64) == 0 {
                Cplx::from_polar(2.0, -2.0 * std::f64::consts::PI * m as f64 * y)
            } else {
                c64(0.0, 0.0)
            };
            assert!((got - expect).norm() < 1e-10, "K={k}, m={m}");
        }
    }
}

#[test]
fn projection_norm_decreases_to_zero_with_the_gap() {
    let lam = FrequencySet::range_1d(-1, 1);
    let mut prev = f64::INFINITY;
    for j in 1..=10 {
        let y = 0.5_f64.powi(j);
        let mu = DiscreteMeasure::from_atoms(
            1,
            [
                (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
                (TorusPoint::new_1d(y), c64(-1.0, 0.0)),
            ],
        );
        let data = mu.fourier_transform(&lam).unwrap();
        let norm = projection_extrapolation_norm(&data, 2048).unwrap();
        assert!(norm < prev, "j={j}: {norm} !< {prev}");
        prev = norm;
    }
    assert!(prev < 1e-2);
}

#[test]
fn grid_spec_points_and_aliasing_are_consistent() {
    // a frequency window wider than the grid aliases
    let grid = GridSpec::new(1, 4).unwrap();
    assert!(grid.check_no_aliasing(&FrequencySet::range_1d(-1, 2)).is_ok());
    assert!(grid.check_no_aliasing(&FrequencySet::range_1d(-2, 2)).is_err());
}

#[test]
fn refinement_chain_stays_flat_when_support_is_on_every_grid() {
    // the strict-gap pair {0, 1/3} lies on every grid divisible by 3
    let w = Cplx::from_polar(1.0, std::f64::consts::PI / 3.0);
    let mu = DiscreteMeasure::from_atoms(
        1,
        [
            (TorusPoint::new_1d(0.0), c64(1.0, 0.0)),
            (TorusPoint::new_1d(1.0 / 3.0), w),
        ],
    );
    let lam = FrequencySet::range_1d(-1, 1);
    let data = mu.fourier_transform(&lam).unwrap();
    let grids: Vec<GridSpec> = [3usize, 6, 12]
        .iter()
        .map(|&n| GridSpec::new(1, n).unwrap())
        .collect();
    let eps = minext::solver::refine_epsilon(&lam, &data, &grids, &SolverOptions::default())
        .unwrap();
    for (i, e) in eps.iter().enumerate() {
        assert!((e - 2.0).abs() < 1e-5, "grid #{i}: {e}");
    }
    // non-increasing along the divisibility chain
    for w in eps.windows(2) {
        assert!(w[1] <= w[0] + 1e-6);
    }
}

#[test]
fn antidiagonal_certificate_sieves_points_on_the_line() {
    // d = 2: the deficit zero set of the validated certificate hugs the
    // line x₁ + x₂ ∈ ℤ
    let lam = FrequencySet::box_nd(2, -1, 1)
        .without(&[Frequency::new(vec![1, -1]), Frequency::new(vec![-1, 1])])
        .unwrap();
    let mu = DiscreteMeasure::from_atoms(
        2,
        [
            (TorusPoint::new(vec![0.0, 0.0]), c64(1.0, 0.0)),
            (TorusPoint::new(vec![0.5, 0.5]), c64(1.0, 0.0)),
        ],
    );
    let data = mu.fourier_transform(&lam).unwrap();
    let (report, _) = solve_on_grid(&data, 16, &SolverOptions::default()).unwrap();
    let copts = CertificateOptions::for_dim(2);
    let cert =
        certificate_from_dual(&report.dual, &lam, &data, report.epsilon_grid, &copts).unwrap();
    if is_degenerate(cert.poly(), 1e-3) {
        return; // the Γ route covers this configuration elsewhere
    }
    let pts = minext::certificate::support_from_certificate_grid(cert.poly(), 64, 1e-4);
    assert!(!pts.is_empty());
    for p in &pts {
        let s = p.coords()[0] + p.coords()[1];
        assert!(
            circle_dist(s, 0.0) <= 2e-2,
            "sieved point {p:?} off the line (x₁+x₂ = {s})"
        );
    }
}

#[test]
fn antidiagonal_solver_atoms_lie_in_the_gamma_structure() {
    // solver atoms must satisfy every hyperplane constraint of the
    // Γ-derived structure
    let lam = FrequencySet::box_nd(2, -1, 1)
        .without(&[Frequency::new(vec![1, -1]), Frequency::new(vec![-1, 1])])
        .unwrap();
    let mu = DiscreteMeasure::from_atoms(
        2,
        [
            (TorusPoint::new(vec![0.0, 0.0]), c64(1.0, 0.0)),
            (TorusPoint::new(vec![0.5, 0.5]), c64(1.0, 0.0)),
        ],
    );
    let data = mu.fourier_transform(&lam).unwrap();
    let (report, grid) = solve_on_grid(&data, 16, &SolverOptions::default()).unwrap();
    let gamma = gamma_set(&data, report.epsilon_grid, 1e-6).unwrap();
    let structure = support_structure(&gamma, &data).unwrap();
    let SupportStructure::Hyperplanes(family) = &structure else {
        panic!("expected hyperplanes, got {}", structure.tag());
    };
    let sol = solution_to_measure(&report, grid, 1e-6);
    assert!(!sol.is_empty());
    for (x, _) in sol.atoms() {
        for h in &family.reduced {
            let v = h.difference.dot(x) + h.offset;
            assert!(circle_dist(v, 0.0) <= 1e-7, "atom {x:?} violates {h:?}");
        }
    }
}

#[test]
fn lp_oracle_agreement_extends_to_the_eight_point_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for case in 0..10 {
        let len = rng.gen_range(2..=4);
        let mut freqs: Vec<i64> = Vec::new();
        while freqs.len() < len {
            let m = rng.gen_range(-3..=4i64); // 8 consecutive residues
            if !freqs.contains(&m) {
                freqs.push(m);
            }
        }
        let lam =
            FrequencySet::new(freqs.into_iter().map(Frequency::new_1d).collect()).unwrap();
        let values: Vec<Cplx<f64>> = (0..lam.len())
            .map(|_| Cplx::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let data = SpectralData::new(lam, values).unwrap();
        let (report, _) = solve_on_grid(&data, 8, &SolverOptions::default()).unwrap();
        assert!(report.converged);
        let lp = bp_phase_lift_oracle(&data, 8, 8192);
        assert!(
            (report.epsilon_grid - lp).abs() <= 1e-6,
            "case {case}: {} vs {lp}",
            report.epsilon_grid
        );
    }
}

#[test]
fn non_contiguous_window_is_rejected() {
    let lam = FrequencySet::new(
        [-3i64, 0, 3]
            .into_iter()
            .map(Frequency::new_1d)
            .collect(),
    )
    .unwrap();
    let mu = DiscreteMeasure::dirac(TorusPoint::new_1d(0.0));
    let data = mu.fourier_transform(&lam).unwrap();
    assert!(matches!(
        minext::positivity::toeplitz_window(&data, 0, 2, 1e-9),
        Err(minext::error::Error::NonContiguousWindow(_))
    ));
    // half-width 3 is readable again (k = 3 present on both sides)… but the
    // gap at k ∈ {1, 2} still rejects the window
    assert!(minext::positivity::toeplitz_window(&data, 0, 3, 1e-9).is_err());
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(500))]

    #[test]
    fn prop_wrap_lands_in_unit_interval(x in -1e6f64..1e6) {
        let w = minext::torus::wrap_unit(x);
        proptest::prop_assert!((0.0..1.0).contains(&w));
        // wrapping is idempotent and respects integer shifts
        proptest::prop_assert_eq!(minext::torus::wrap_unit(w), w);
    }

    #[test]
    fn prop_circle_distance_is_a_metric_on_representatives(
        a in 0.0f64..1.0,
        b in 0.0f64..1.0,
        c in 0.0f64..1.0,
    ) {
        let dab = circle_dist(a, b);
        proptest::prop_assert!(dab <= 0.5 + 1e-15);
        proptest::prop_assert!((dab - circle_dist(b, a)).abs() < 1e-15);
        proptest::prop_assert!(dab <= circle_dist(a, c) + circle_dist(c, b) + 1e-12);
    }

    #[test]
    fn prop_measure_json_round_trips(
        xs in proptest::collection::vec(0.0f64..1.0, 1..5),
        res in proptest::collection::vec(-10.0f64..10.0, 1..5),
    ) {
        let n = xs.len().min(res.len());
        let mu = DiscreteMeasure::from_atoms(
            1,
            xs.iter().take(n).zip(res.iter()).map(|(&x, &re)| {
                (TorusPoint::new_1d(x), c64(re, -re / 3.0))
            }),
        );
        let json = serde_json::to_string(&minext::io::MeasureJson::from(&mu)).unwrap();
        let back: minext::io::MeasureJson = serde_json::from_str(&json).unwrap();
        let mu2 = DiscreteMeasure::try_from(&back).unwrap();
        proptest::prop_assert!(mu.approx_eq(&mu2, 0.0, 0.0));
    }

    #[test]
    fn prop_tv_norm_is_subadditive_and_homogeneous(
        x1 in 0.0f64..1.0,
        x2 in 0.0f64..1.0,
        w1 in -5.0f64..5.0,
        w2 in -5.0f64..5.0,
        s in 0.1f64..10.0,
    ) {
        let a = DiscreteMeasure::from_atoms(1, [(TorusPoint::new_1d(x1), c64(w1, 0.3))]);
        let b = DiscreteMeasure::from_atoms(1, [(TorusPoint::new_1d(x2), c64(0.1, w2))]);
        let sum = a.add(&b).unwrap();
        proptest::prop_assert!(sum.tv_norm() <= a.tv_norm() + b.tv_norm() + 1e-12);
        let scaled = a.scale(c64(0.0, s));
        proptest::prop_assert!((scaled.tv_norm() - s * a.tv_norm()).abs() < 1e-9);
    }
}

#[test]
fn core_arithmetic_is_scalar_generic() {
    // the same code paths instantiated at f32
    let mu = DiscreteMeasure::<f32>::from_atoms(
        1,
        [
            (TorusPoint::new_1d(0.0f32), Cplx::new(1.0f32, 0.0)),
            (TorusPoint::new_1d(0.5f32), Cplx::new(-1.0f32, 0.0)),
        ],
    );
    assert_eq!(mu.tv_norm(), 2.0f32);
    let lam = FrequencySet::range_1d(-1, 1);
    let data = mu.fourier_transform(&lam).unwrap();
    assert!((data.sup_norm() - 2.0).abs() < 1e-6);

    let opts = SolverOptions::<f32> {
        feas_tol: 1e-4,
        gap_tol: 1e-4,
        ..SolverOptions::default()
    };
    let (report, _) = solve_on_grid(&data, 8, &opts).unwrap();
    assert!(report.converged);
    assert!((report.epsilon_grid - 2.0).abs() < 1e-2);

    let d = deficit(&TrigPolynomial::<f32>::cosine(&Frequency::new_1d(1)));
    let zeros = minext::roots::unit_circle_zeros(&d, 1e-4f32).unwrap();
    assert_eq!(zeros.len(), 2);
}
