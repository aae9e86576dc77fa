use bmcp::rng::SolverRng;
use bmcp::{
    generate_instance, parse_instance, write_instance, GeneratorSpec, Instance, Move,
    SearchState, SelectionVector,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn small_instance() -> impl Strategy<Value = Instance> {
    (1usize..12, 1usize..12, 0u64..60).prop_flat_map(|(m, n, cap)| {
        (
            prop::collection::vec(1u64..20, m),
            prop::collection::vec(1u64..20, n),
            prop::collection::vec(prop::collection::btree_set(0..n as u32, 0..=n), m),
        )
            .prop_map(move |(w, p, rows)| {
                Instance::new(cap, w, p, rows.into_iter().map(|r| r.into_iter().collect()).collect())
                    .unwrap()
            })
    })
}

fn random_feasible_move<R: Rng>(state: &SearchState<'_>, rng: &mut R) -> Option<Move> {
    let m = state.instance().item_count();
    for _ in 0..64 {
        let mv = if rng.gen_bool(0.5) {
            Move::Flip(rng.gen_range(0..m))
        } else {
            let p = rng.gen_range(0..m);
            let q = rng.gen_range(0..m);
            if !state.is_selected(p) || state.is_selected(q) {
                continue;
            }
            Move::Swap { remove: p, add: q }
        };
        if state.delta(mv).map(|d| d.feasible).unwrap_or(false) {
            return Some(mv);
        }
    }
    None
}

#[test]
fn fuzz_matches_rebuild() {
    let inst = generate_instance(&GeneratorSpec::new(100, 100, 0.075, 1500, 77)).unwrap();
    let mut rng = SolverRng::seed_from_u64(77);
    let mut state = SearchState::empty(&inst);
    for _ in 0..100_000 {
        let mv = random_feasible_move(&state, &mut rng).expect("some move is always feasible");
        let before = state.objective() as i64;
        let d = state.apply(mv).unwrap();
        assert_eq!(state.objective() as i64, before + d.delta_objective);
        let fresh = SearchState::new(&inst, state.selection().clone()).unwrap();
        assert_eq!(state, fresh, "after {mv}");
        assert!(state.coverage().iter().all(|&h| h as usize <= inst.item_count()));
    }
}

#[test]
fn generated_instances_round_trip() {
    for seed in 0..100 {
        let spec = GeneratorSpec::new(20 + seed as usize % 30, 25, 0.1, 200, seed);
        let inst = generate_instance(&spec).unwrap();
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(inst in small_instance()) {
        prop_assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn deltas_agree_with_full_evaluation(inst in small_instance(), bits in prop::collection::vec(any::<bool>(), 12)) {
        let m = inst.item_count();
        let mut sel = SelectionVector::from_bits(bits[..m].to_vec());
        // drop items until feasible
        for i in 0..m {
            if inst.is_feasible(&sel) { break; }
            sel.set(i, false);
        }
        let state = SearchState::new(&inst, sel.clone()).unwrap();
        let f0 = inst.full_objective(&sel) as i64;
        let w0 = inst.total_weight(&sel) as i64;
        prop_assert_eq!(state.objective() as i64, f0);

        for q in 0..m {
            let d = state.flip_delta(q);
            let mut next = sel.clone();
            next.toggle(q);
            prop_assert_eq!(d.delta_objective, inst.full_objective(&next) as i64 - f0);
            prop_assert_eq!(d.delta_weight, inst.total_weight(&next) as i64 - w0);
            prop_assert_eq!(d.feasible, inst.is_feasible(&next));
        }
        for p in sel.iter_selected() {
            for q in sel.iter_unselected() {
                let d = state.swap_delta(p, q).unwrap();
                // composition: flip-out then flip-in on the intermediate state
                let out = state.flip_delta(p);
                let mut mid_sel = sel.clone();
                mid_sel.set(p, false);
                let mid = SearchState::new(&inst, mid_sel).unwrap();
                let inn = mid.flip_delta(q);
                prop_assert_eq!(d.delta_objective, out.delta_objective + inn.delta_objective);
                prop_assert_eq!(d.delta_weight, out.delta_weight + inn.delta_weight);
            }
        }
    }

    #[test]
    fn flip_is_an_involution(inst in small_instance(), seed in any::<u64>()) {
        let mut rng = SolverRng::seed_from_u64(seed);
        let mut state = SearchState::empty(&inst);
        for _ in 0..20 {
            let Some(mv) = random_feasible_move(&state, &mut rng) else { break };
            state.apply(mv).unwrap();
        }
        for q in 0..inst.item_count() {
            let d = state.flip_delta(q);
            if !d.feasible { continue; }
            let before = state.clone();
            state.apply(Move::Flip(q)).unwrap();
            let back = state.flip_delta(q);
            prop_assert_eq!(back.delta_objective, -d.delta_objective);
            prop_assert_eq!(back.delta_weight, -d.delta_weight);
            state.apply(Move::Flip(q)).unwrap();
            prop_assert_eq!(&state, &before);
        }
    }
}
