use proptest::prelude::*;

use recolor::oracle::exact_chromatic_number;
use recolor::rng::seeded;
use recolor::{is_legal, solve_vcol, CompleteColoring, Engine, Graph, InitGenerator, RecolorRule, SolveConfig, TenureScheme};

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=9, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, seed)| Graph::random_gnp(n, p, &mut seeded(seed)))
}

fn init() -> impl Strategy<Value = InitGenerator> {
    prop_oneof![
        Just(InitGenerator::RecycleStar),
        (1usize..4).prop_map(InitGenerator::RecycleT),
        Just(InitGenerator::Greedy),
        Just(InitGenerator::Random),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_reaches_the_chromatic_number(
        g in small_graph(),
        engine in prop_oneof![Just(Engine::Tabucol), Just(Engine::Partialcol)],
        foo in any::<bool>(),
        init in init(),
        least in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let cfg = SolveConfig {
            engine,
            init,
            recolor: if least { RecolorRule::LeastSelection } else { RecolorRule::Random },
            scheme: if foo { TenureScheme::foo_default() } else { TenureScheme::dyn_default() },
            time_limit: std::time::Duration::from_secs(60),
            iter_cap: Some(20_000),
        };
        let r = solve_vcol(&g, &cfg, seed).unwrap();
        let chi = exact_chromatic_number(&g).unwrap().max(1);
        prop_assert_eq!(r.best_k, chi);
        let c = CompleteColoring::from_one_based(r.best_k, &r.best_coloring).unwrap();
        prop_assert!(is_legal(&g, &c));
        prop_assert!(r.best_k <= r.dsatur_k);
        let ks: Vec<usize> = r.levels.iter().map(|l| l.k).collect();
        prop_assert!(ks.windows(2).all(|w| w[1] + 1 == w[0]));
    }
}
