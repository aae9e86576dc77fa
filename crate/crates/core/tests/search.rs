use bmcp::descent::best_improving_swap;
use bmcp::driver::{batch_serial, solve_observed, RunObserver};
use bmcp::rng::SolverRng;
use bmcp::tabu::{select_move, SearchObserver};
use bmcp::{
    batch, descent_local_search, exact_optimum, generate_instance, initial_solution, solve,
    tabu_search, Budget, GeneratorSpec, Move, PerturbationPolicy, ProbabilityVector,
    SearchState, SolverConfig, TabuList, TsParams,
};
use rand::{Rng, SeedableRng};

#[derive(Default)]
struct Visits {
    moves: usize,
    violations: usize,
    max_objective: u64,
}

impl SearchObserver for Visits {
    fn on_move(&mut self, state: &SearchState<'_>, _mv: Move) {
        self.moves += 1;
        if state.total_weight() > state.instance().capacity() {
            self.violations += 1;
        }
        self.max_objective = self.max_objective.max(state.objective());
    }
}

impl RunObserver for Visits {}

#[test]
fn tabu_search_improves_on_descent_and_stays_feasible() {
    let inst = generate_instance(&GeneratorSpec::new(100, 100, 0.075, 1500, 31)).unwrap();
    let params = TsParams::new(2000, bmcp::tabu_tenure(100, 100)).unwrap();
    for seed in 0..20 {
        let mut rng = SolverRng::seed_from_u64(seed);
        let start = initial_solution(&inst, &mut rng);
        let start_objective = start.objective();
        let mut prob = ProbabilityVector::with_defaults(100);
        let mut visits = Visits::default();
        let best = tabu_search(start, &mut prob, &params, &mut rng, &mut visits);
        assert!(best.objective() >= start_objective);
        assert_eq!(best.objective(), visits.max_objective.max(start_objective));
        assert_eq!(visits.violations, 0);
        assert!(best.is_consistent());
        assert!(prob.values().iter().all(|&p| p > 0.0 && p < 1.0));
    }
}

#[test]
fn descent_output_has_no_improving_exchange() {
    for seed in 0..10 {
        let inst = generate_instance(&GeneratorSpec::new(40, 50, 0.1, 400, seed)).unwrap();
        let mut rng = SolverRng::seed_from_u64(seed);
        let out = descent_local_search(
            SearchState::new(&inst, bmcp::random_fill(&inst, &mut rng)).unwrap(),
            &mut rng,
        );
        assert!(best_improving_swap(&out, &mut rng).is_none());
        let sel = out.selection();
        let f = out.objective();
        for p in sel.iter_selected() {
            for q in sel.iter_unselected() {
                let mut next = sel.clone();
                next.set(p, false);
                next.set(q, true);
                if inst.is_feasible(&next) {
                    assert!(inst.full_objective(&next) <= f);
                }
            }
        }
    }
}

#[test]
fn neighbourhood_scan_is_bounded() {
    let inst = generate_instance(&GeneratorSpec::new(60, 60, 0.1, 600, 2)).unwrap();
    let mut rng = SolverRng::seed_from_u64(2);
    let mut state = initial_solution(&inst, &mut rng);
    let mut tabu = TabuList::new(60, 5);
    for _ in 0..200 {
        let v = state.selection().selected_count();
        let Some(choice) = select_move(&state, &tabu, state.objective(), &mut rng) else {
            break;
        };
        assert!(choice.scanned <= 60 + v * (60 - v));
        state.apply(choice.mv).unwrap();
        for i in choice.mv.items() {
            tabu.mark(i);
        }
        tabu.advance();
    }
}

#[test]
fn probabilities_stay_open() {
    let mut rng = SolverRng::seed_from_u64(8);
    let mut pv = ProbabilityVector::with_defaults(100);
    for _ in 0..100_000 {
        let i = rng.gen_range(0..100);
        let before = pv.get(i);
        if rng.gen_bool(0.5) {
            pv.reward(i);
            assert!(pv.get(i) > before);
        } else {
            pv.punish(i);
            assert!(pv.get(i) < before);
        }
    }
    assert!(pv.values().iter().all(|&p| p > 0.0 && p < 1.0));
}

#[test]
fn solver_never_beats_the_oracle() {
    let mut rng = SolverRng::seed_from_u64(99);
    for k in 0..15 {
        let m = rng.gen_range(6..=14);
        let n = rng.gen_range(8..=20);
        let inst = generate_instance(&GeneratorSpec::new(m, n, 0.2, 60, k)).unwrap();
        let (opt, _) = exact_optimum(&inst).unwrap();
        let cfg = SolverConfig {
            budget: Budget::Rounds(3),
            seed: k,
            ..SolverConfig::default()
        };
        let r = solve(&inst, &cfg).unwrap();
        assert!(r.best_objective <= opt);
        assert_eq!(inst.full_objective(&r.best_selection), r.best_objective);
        assert!(r.best_weight <= inst.capacity());
    }
}

#[test]
fn round_mode_is_deterministic() {
    let inst = generate_instance(&GeneratorSpec::new(100, 100, 0.075, 1500, 5)).unwrap();
    for policy in [PerturbationPolicy::Probability, PerturbationPolicy::Random] {
        let cfg = SolverConfig {
            budget: Budget::Rounds(5),
            seed: 1234,
            perturbation: policy,
            ..SolverConfig::default()
        };
        let a = solve(&inst, &cfg).unwrap();
        let b = solve(&inst, &cfg).unwrap();
        assert!(a.same_outcome(&b));
        assert_eq!(a.rounds, 5);
    }
}

#[test]
fn carry_probability_changes_nothing_structural() {
    let inst = generate_instance(&GeneratorSpec::new(50, 50, 0.1, 500, 6)).unwrap();
    let cfg = SolverConfig {
        budget: Budget::Rounds(4),
        carry_probability: true,
        depth_override: Some(500),
        seed: 3,
        ..SolverConfig::default()
    };
    let mut visits = Visits::default();
    let r = solve_observed(&inst, &cfg, &mut visits).unwrap();
    assert_eq!(visits.violations, 0);
    assert_eq!(r.rounds, 4);
    assert!(r.best_objective >= visits.max_objective);
}

#[test]
fn serial_and_parallel_batches_agree() {
    let inst = generate_instance(&GeneratorSpec::new(60, 60, 0.1, 600, 12)).unwrap();
    let cfg = SolverConfig {
        budget: Budget::Rounds(3),
        depth_override: Some(1000),
        seed: 40,
        ..SolverConfig::default()
    };
    let par = batch(&inst, &cfg, 6).unwrap();
    let ser = batch_serial(&inst, &cfg, 6).unwrap();
    assert_eq!(par.f_best, ser.f_best);
    assert_eq!(par.f_avg, ser.f_avg);
    assert_eq!(par.std, ser.std);
    for (a, b) in par.per_run.iter().zip(&ser.per_run) {
        assert!(a.same_outcome(b));
    }
}
