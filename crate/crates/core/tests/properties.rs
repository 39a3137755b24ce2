//! Property tests over randomly drawn states.

mod common;

use proptest::prelude::*;
use qdiscord::correlations::{
    concurrence, discord, discord_from_monogamy, von_neumann_entropy, zero_discord_witness, DiscordOptions,
    DiscordProblem, LogBase, MeasurementBasis, Tripartite,
};
use qdiscord::linalg::{self, eig_hermitian, max_abs, CMatrix};
use qdiscord::state::{purify, DensityMatrix, Factors};
use qdiscord::tol;
use qdiscord::witness::{p_nm, p_nm_tilde};
use rand::Rng;

use common::*;

fn two_qubits() -> Factors {
    Factors::new(&[("S", 2), ("E", 2)]).unwrap()
}

fn three_qubits() -> Factors {
    Factors::new(&[("S", 2), ("E", 2), ("A", 2)]).unwrap()
}

/// `sum_k p_k |k><k| (x) rho_k` with random qubit basis on S.
fn classical_quantum(seed: u64) -> DensityMatrix {
    let mut r = rng(seed);
    let u = random_unitary(&mut r, 2);
    let p: f64 = r.gen_range(0.0..1.0);
    let mut m = CMatrix::zeros(4, 4);
    for (k, w) in [p, 1.0 - p].into_iter().enumerate() {
        let v = u.column(k).into_owned();
        let proj = &v * v.adjoint();
        let rho_e = random_density(&mut r, Factors::single("E", 2).unwrap());
        m += linalg::kron(&proj, rho_e.data()).scale(w);
    }
    DensityMatrix::new(m, two_qubits()).unwrap()
}

fn bipartite_factors() -> impl Strategy<Value = Factors> {
    (1usize..=4, 1usize..=4).prop_map(|(a, b)| Factors::new(&[("X", a), ("Y", b)]).unwrap())
}

fn tripartite_factors() -> impl Strategy<Value = Factors> {
    (1usize..=2, 1usize..=3, 1usize..=2).prop_map(|(a, b, c)| Factors::new(&[("X", a), ("Y", b), ("Z", c)]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn partial_trace_preserves_trace_and_positivity(factors in tripartite_factors(), seed in any::<u64>()) {
        let rho = random_density(&mut rng(seed), factors);
        for keep in [vec!["X"], vec!["Y"], vec!["Z"], vec!["X", "Z"], vec!["Y", "Z"]] {
            let reduced = rho.partial_trace(&keep).unwrap();
            prop_assert!((reduced.trace() - 1.0).abs() < 1e-12);
            prop_assert!(linalg::hermiticity_residual(reduced.data()) < 1e-12);
            prop_assert!(reduced.eigenvalues().iter().all(|&v| v > -1e-12));
        }
    }

    #[test]
    fn tensor_then_trace_recovers_factors(fa in 1usize..=4, fb in 1usize..=4, seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_density(&mut r, Factors::single("X", fa).unwrap());
        let b = random_density(&mut r, Factors::single("Y", fb).unwrap());
        let ab = a.tensor(&b).unwrap();
        prop_assert!(max_abs(&(ab.partial_trace(&["X"]).unwrap().data() - a.data())) < 1e-12);
        prop_assert!(max_abs(&(ab.partial_trace(&["Y"]).unwrap().data() - b.data())) < 1e-12);
    }

    #[test]
    fn purification_roundtrip(factors in bipartite_factors(), rank in 1usize..=16, seed in any::<u64>()) {
        let d = factors.total_dim();
        let rho = random_density_of_rank(&mut rng(seed), factors, rank.min(d));
        let psi = purify(&rho, "A", tol::RANK_CUTOFF).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
        prop_assert!(psi.factors().dim_of("A").unwrap() <= rank.min(d));
        let back = psi.reduced(&["X", "Y"]).unwrap();
        prop_assert!(max_abs(&(back.data() - rho.data())) < 1e-9);
    }

    #[test]
    fn spectrum_sums_to_one(factors in bipartite_factors(), seed in any::<u64>()) {
        let rho = random_density(&mut rng(seed), factors);
        let eig = eig_hermitian(rho.data()).unwrap();
        prop_assert!((eig.values.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(max_abs(&(eig.reconstruct() - rho.data())) < 1e-12);
    }

    #[test]
    fn entropy_is_unitarily_invariant(factors in bipartite_factors(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = factors.total_dim();
        let rho = random_density(&mut r, factors);
        let u = random_unitary(&mut r, d);
        let rotated = rho.conjugated(&u).unwrap();
        let (s0, s1) = (von_neumann_entropy(&rho, LogBase::Two), von_neumann_entropy(&rotated, LogBase::Two));
        prop_assert!((s0 - s1).abs() < 1e-10);
        prop_assert!(s0 >= -1e-12 && s0 <= (d as f64).log2() + 1e-12);
    }

    #[test]
    fn concurrence_is_local_unitary_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = r.gen_range(1..=4);
        let rho = random_density_of_rank(&mut r, two_qubits(), rank);
        let local = linalg::kron(&random_unitary(&mut r, 2), &random_unitary(&mut r, 2));
        let c0 = concurrence(&rho).unwrap();
        let c1 = concurrence(&rho.conjugated(&local).unwrap()).unwrap();
        prop_assert!((0.0..=1.0).contains(&c0));
        prop_assert!((c0 - c1).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn discord_is_nonnegative_and_vanishes_on_products(seed in any::<u64>()) {
        let mut r = rng(seed);
        let opts = DiscordOptions::default();
        let rho = random_density(&mut r, two_qubits());
        prop_assert!(discord(&rho, "S", &opts).unwrap().value >= 0.0);
        prop_assert!(discord(&rho, "E", &opts).unwrap().value >= 0.0);
        let a = random_density(&mut r, Factors::single("S", 2).unwrap());
        let b = random_density(&mut r, Factors::single("E", 2).unwrap());
        let product = a.tensor(&b).unwrap();
        prop_assert!(discord(&product, "S", &opts).unwrap().value.abs() < 1e-8);
        prop_assert!(zero_discord_witness(&product, "S").unwrap() < 1e-12);
    }

    #[test]
    fn classical_quantum_states_have_no_discord(seed in any::<u64>()) {
        let rho = classical_quantum(seed);
        prop_assert!(discord(&rho, "S", &DiscordOptions::default()).unwrap().value < 1e-8);
        prop_assert!(zero_discord_witness(&rho, "S").unwrap() < 1e-12);
    }

    #[test]
    fn optimizer_beats_every_coarse_grid_point(seed in any::<u64>()) {
        let rho = random_density(&mut rng(seed), two_qubits());
        let opts = DiscordOptions::default();
        let problem = DiscordProblem::new(&rho, "S", LogBase::Two).unwrap();
        let best = problem.minimize(&opts).value;
        let (nt, np) = (opts.grid_theta, opts.grid_phi);
        for i in 0..nt {
            for j in 0..np {
                let basis = MeasurementBasis::new(
                    i as f64 * std::f64::consts::PI / (nt - 1) as f64,
                    j as f64 * std::f64::consts::TAU / np as f64,
                );
                prop_assert!(best <= problem.objective(&basis) + 1e-12);
            }
        }
    }

    #[test]
    fn witness_implies_discord(seed in any::<u64>(), mix in 0.0f64..1.0) {
        // blends of a zero-discord state with a generic one sweep through small witness values
        let mut r = rng(seed);
        let cq = classical_quantum(seed ^ 0x9e37_79b9);
        let other = random_density(&mut r, two_qubits());
        let m = cq.data().scale(1.0 - mix * mix) + other.data().scale(mix * mix);
        let rho = DensityMatrix::new(m, two_qubits()).unwrap();
        let w = zero_discord_witness(&rho, "S").unwrap();
        let d = discord(&rho, "S", &DiscordOptions::default()).unwrap().value;
        if w > 1e-6 {
            prop_assert!(d > 1e-9, "witness {w} but discord {d}");
        }
    }

    #[test]
    fn discord_bounds_entropy_difference(seed in any::<u64>()) {
        let psi = random_pure(&mut rng(seed), three_qubits());
        let rho_se = psi.reduced(&["S", "E"]).unwrap();
        let d = discord(&rho_se, "S", &DiscordOptions::default()).unwrap().value;
        let s_s = von_neumann_entropy(&psi.reduced(&["S"]).unwrap(), LogBase::Two);
        let s_a = von_neumann_entropy(&psi.reduced(&["A"]).unwrap(), LogBase::Two);
        prop_assert!(d >= s_s - s_a - 1e-6);
    }

    #[test]
    fn monogamy_matches_fine_grid_oracle(seed in any::<u64>()) {
        let psi = random_pure(&mut rng(seed), three_qubits());
        let rho_se = psi.reduced(&["S", "E"]).unwrap();
        let oracle = TwoQubitOracle::new(&rho_se, "S");
        let min = brute_force_min(&oracle, 181, 360);
        let direct = oracle.entropy_measured_marginal() + min.refined - entropy_bits(&jacobi_eigenvalues(rho_se.data()));
        let via_eof = discord_from_monogamy(&psi, Tripartite::default(), LogBase::Two).unwrap();
        prop_assert!((direct - via_eof).abs() < 1e-6, "{direct} vs {via_eof}");
    }

    #[test]
    fn tilde_measure_is_average_of_positive_part(len in 3usize..60, seed in any::<u64>()) {
        let mut r = rng(seed);
        let dt = 0.1;
        let times: Vec<f64> = (0..len).map(|k| k as f64 * dt).collect();
        let delta: Vec<f64> = (0..len).map(|_| r.gen_range(-1.0..1.0)).collect();
        let positive: Vec<f64> = delta.iter().map(|&d| d.max(0.0)).collect();
        let tau = times[len - 1];
        let a = p_nm_tilde(&times, &delta, tau).unwrap();
        let b = p_nm(&times, &positive, tau).unwrap();
        prop_assert!((a - b).abs() < 1e-14);
        prop_assert!(a >= 0.0);
    }
}
