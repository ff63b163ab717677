use ivprob::{
    constraints_from_database, extension_star, measure_u0, measure_u1, measure_u2, optimize,
    project_database, Direction, IntervalDistribution, Scheme, Space,
};
use proptest::prelude::*;

fn abc() -> Space {
    Space::from_domains(&[("A", ["0", "1"]), ("B", ["0", "1"]), ("C", ["0", "1"])]).unwrap()
}

fn random_box() -> impl Strategy<Value = Vec<(f64, f64)>> {
    (
        prop::collection::vec(0.05f64..1.0, 8),
        prop::collection::vec(0.0f64..0.1, 8),
        prop::collection::vec(0.0f64..0.1, 8),
    )
        .prop_map(|(w, a, b)| {
            let t: f64 = w.iter().sum();
            w.iter()
                .zip(a.iter().zip(&b))
                .map(|(x, (a, b))| ((x / t - a).max(0.0), (x / t + b).min(1.0)))
                .collect()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Members of E(I) are widenings of consistent joints capped by E(I)*.
    #[test]
    fn extension_star_bounds_the_uncertainty_of_members(
        iv in random_box(),
        objective in prop::collection::vec(-1.0f64..1.0, 8),
        slack in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 8),
    ) {
        let i = IntervalDistribution::from_intervals(abc(), &iv).unwrap();
        let db = project_database(&i, &"A,B|B,C".parse::<Scheme>().unwrap()).unwrap();
        let star = extension_star(&db).unwrap();
        let cs = constraints_from_database(&db, db.ambient()).unwrap();
        let witness = optimize(&cs, &objective, Direction::Maximize).unwrap();
        let p = witness.witness().unwrap().probs().to_vec();

        let (lower, upper): (Vec<f64>, Vec<f64>) = p
            .iter()
            .zip(star.intervals())
            .zip(&slack)
            .map(|((&x, (l, u)), &(a, b))| {
                let x = x.clamp(l, u);
                (x - a * (x - l), x + b * (u - x))
            })
            .unzip();
        let member = IntervalDistribution::new(abc(), lower, upper).unwrap();
        prop_assert!(member.is_more_informative_than(&star).unwrap());

        prop_assert!(measure_u0(&member) <= measure_u0(&star) + 1e-12);
        prop_assert!(measure_u1(&member).unwrap() <= measure_u1(&star).unwrap() + 1e-9);
        // the minimum over a larger box can only be lower
        prop_assert!(measure_u2(&star).unwrap() <= measure_u2(&member).unwrap() + 1e-9);
    }
}
