use bui_gtodim::aggregation::{AggregationFunction, BaseAggregation};
use bui_gtodim::todim::Branch;
use bui_gtodim::*;
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn unit() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

fn bui() -> impl Strategy<Value = Bui> {
    (unit(), unit()).prop_map(|(x, c)| Bui::new(x, c).unwrap())
}

fn positive_bui() -> impl Strategy<Value = Bui> {
    (unit(), 1e-6..=1.0f64).prop_map(|(x, c)| Bui::new(x, c).unwrap())
}

fn unit_interval() -> impl Strategy<Value = Interval> {
    (unit(), unit()).prop_map(|(a, b)| Interval::new(a.min(b), a.max(b)).unwrap())
}

fn weights(m: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(0.01..=1.0f64, m).prop_map(|raw| WeightVector::normalized(raw).unwrap())
}

fn matrix(max_n: usize, max_m: usize) -> impl Strategy<Value = DecisionMatrix> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(prop::collection::vec(bui(), m), n),
            weights(m),
        )
            .prop_map(|(grid, w)| DecisionMatrix::from_grid(grid, w).unwrap())
    })
}

fn setup(theta: f64, profile: Profile) -> (ValueFunctions, TodimParams) {
    let p = TodimParams::new(1.0, 1.0, theta, profile).unwrap();
    (ValueFunctions::from_params(&p), p)
}

fn profile() -> impl Strategy<Value = Profile> {
    prop_oneof![Just(Profile::Paper), Just(Profile::Consistent)]
}

proptest! {
    // BUI algebra

    #[test]
    fn interval_round_trip(a in positive_bui()) {
        let back = from_interval(to_interval(a));
        prop_assert!((back.datum() - a.datum()).abs() <= 1e-9 * (1.0 / a.certainty()).max(1.0));
        prop_assert!((back.certainty() - a.certainty()).abs() <= TOL);
    }

    #[test]
    fn width_law(a in bui()) {
        prop_assert!((to_interval(a).width() - (1.0 - a.certainty())).abs() <= TOL);
    }

    #[test]
    fn signed_numerator_law(a in bui(), b in bui()) {
        let r = bui_sub(a, b);
        let diff = Interval::from(to_interval(a)) - Interval::from(to_interval(b));
        let reconstructed = if r.is_degenerate() { r.datum() } else { r.datum() * r.certainty() };
        prop_assert!((reconstructed - diff.lower()).abs() <= TOL);
    }

    #[test]
    fn sub_certainty_symmetry(a in bui(), b in bui()) {
        let ab = bui_sub(a, b).certainty();
        prop_assert_eq!(ab, bui_sub(b, a).certainty());
        prop_assert!((ab - (a.certainty() + b.certainty() - 1.0).abs()).abs() <= TOL);
    }

    // Possibility degree

    #[test]
    fn possibility_normative_and_complementary(a in bui(), b in bui()) {
        let p = bui_possibility(a, b).value();
        let q = bui_possibility(b, a).value();
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!((p + q - 1.0).abs() <= TOL);
        prop_assert!((bui_possibility(a, a).value() - 0.5).abs() <= TOL);
    }

    #[test]
    fn interval_transitivity(a in unit_interval(), b in unit_interval(), c in unit_interval()) {
        let ab = interval_possibility(&a, &b).value();
        let bc = interval_possibility(&b, &c).value();
        if ab <= 0.5 && bc <= 0.5 {
            prop_assert!(interval_possibility(&a, &c).value() <= 0.5 + TOL);
        }
    }

    #[test]
    fn succeeds_is_a_midpoint_comparison(a in bui(), b in bui()) {
        let mid = |x: Bui| { let i = to_interval(x); i.lower() + i.upper() };
        match outrank(a, b) {
            OutrankRelation::Succeeds => prop_assert!(mid(a) > mid(b) - TOL),
            OutrankRelation::Precedes => prop_assert!(mid(a) < mid(b) + TOL),
            OutrankRelation::Indifferent => prop_assert!((mid(a) - mid(b)).abs() <= 1e-9),
        }
    }

    #[test]
    fn possibility_matrix_is_coherent(items in prop::collection::vec(bui(), 1..8)) {
        let labelled: Vec<(String, Bui)> =
            items.into_iter().enumerate().map(|(i, b)| (format!("x{i}"), b)).collect();
        let r = rank_by_possibility(&labelled).unwrap();
        prop_assert!(r.matrix.coherence_violations().is_empty());
        let mut sorted = r.order.clone();
        sorted.sort();
        let mut labels: Vec<String> = labelled.iter().map(|(l, _)| l.clone()).collect();
        labels.sort();
        prop_assert_eq!(sorted, labels);
    }

    #[test]
    fn ranking_ignores_input_order(
        items in prop::collection::vec(bui(), 2..7),
        rotation in 0usize..7,
    ) {
        let labelled: Vec<(String, Bui)> =
            items.into_iter().enumerate().map(|(i, b)| (format!("x{i}"), b)).collect();
        let first = rank_by_possibility(&labelled).unwrap();
        prop_assume!(first.tie_breaks.is_empty());
        let mut rotated = labelled.clone();
        rotated.rotate_left(rotation % labelled.len());
        rotated.reverse();
        prop_assert_eq!(first.order, rank_by_possibility(&rotated).unwrap().order);
    }

    /// If `a` succeeds `b` and does at least as well as `b` against every
    /// other item, the row sums put `a` first.
    #[test]
    fn ranking_respects_uniform_dominance(items in prop::collection::vec(bui(), 3..6)) {
        let labelled: Vec<(String, Bui)> =
            items.iter().copied().enumerate().map(|(i, b)| (format!("x{i}"), b)).collect();
        let r = rank_by_possibility(&labelled).unwrap();
        let pos = |i: usize| r.order.iter().position(|l| *l == labelled[i].0).unwrap();
        let n = items.len();
        for a in 0..n {
            for b in 0..n {
                if a == b || r.matrix.get(a, b) <= 0.5 + TOL {
                    continue;
                }
                let uniform = (0..n)
                    .filter(|&c| c != a && c != b)
                    .all(|c| r.matrix.get(a, c) >= r.matrix.get(b, c));
                if uniform {
                    prop_assert!(pos(a) < pos(b));
                }
            }
        }
    }

    // Aggregation lift

    #[test]
    fn lift_axioms(
        pairs in prop::collection::vec(bui(), 1..9),
        raw in prop::collection::vec(0.01..=1.0f64, 9),
        bump in 0.0..=1.0f64,
        which in 0usize..9,
        new_c in unit(),
    ) {
        let m = pairs.len();
        let w = WeightVector::normalized(raw[..m].to_vec()).unwrap();
        for agg in [BaseAggregation::mean(m), BaseAggregation::weighted(w.clone())] {
            let c = certainty_transform(&agg, &pairs).unwrap();
            prop_assert!((0.0..=1.0).contains(&c));
            let lifted = bui_lift(&agg, &pairs).unwrap();

            // weighted-mean identity
            let weights: Vec<f64> = match &agg {
                BaseAggregation::ArithmeticMean { arity } => vec![1.0 / *arity as f64; *arity],
                BaseAggregation::WeightedMean(w) => w.as_slice().to_vec(),
            };
            let direct: f64 = weights.iter().zip(&pairs).map(|(w, p)| w * p.certainty()).sum();
            prop_assert!((c - direct).abs() <= TOL);

            let k = which % m;
            let mut raised = pairs.clone();
            raised[k] = Bui::new((pairs[k].datum() + bump).min(1.0), pairs[k].certainty()).unwrap();
            prop_assert!(bui_lift(&agg, &raised).unwrap().datum() >= lifted.datum() - TOL);

            let mut recertain = pairs.clone();
            recertain[k] = Bui::new(pairs[k].datum(), new_c).unwrap();
            prop_assert_eq!(bui_lift(&agg, &recertain).unwrap().datum(), lifted.datum());

            let zeros: Vec<Bui> = pairs.iter().map(|p| Bui::new(0.0, p.certainty()).unwrap()).collect();
            let ones: Vec<Bui> = pairs.iter().map(|p| Bui::new(1.0, p.certainty()).unwrap()).collect();
            prop_assert_eq!(bui_lift(&agg, &zeros).unwrap().datum(), 0.0);
            prop_assert!((bui_lift(&agg, &ones).unwrap().datum() - 1.0).abs() <= TOL);
            prop_assert_eq!(agg.arity(), m);
        }
    }

    // Engine

    #[test]
    fn classification_is_antisymmetric(a in bui(), b in bui(), w in 0.01..=1.0f64, profile in profile()) {
        let (vf, p) = setup(1.0, profile);
        let ab = criterion_dominance(a, b, w, &vf, &p).branch;
        let ba = criterion_dominance(b, a, w, &vf, &p).branch;
        let expected = match ab {
            Branch::Gain => Branch::Loss,
            Branch::Loss => Branch::Gain,
            Branch::Zero => Branch::Zero,
        };
        prop_assert_eq!(ba, expected);
    }

    #[test]
    fn theta_only_shrinks_losses(
        a in bui(), b in bui(), w in 0.01..=1.0f64,
        t1 in 1.0..5.0f64, dt in 0.0..5.0f64, profile in profile(),
    ) {
        let (vf, p1) = setup(t1, profile);
        let (_, p2) = setup(t1 + dt, profile);
        let lo = criterion_dominance(a, b, w, &vf, &p1);
        let hi = criterion_dominance(a, b, w, &vf, &p2);
        match lo.branch {
            Branch::Loss => prop_assert!(hi.value.datum().abs() <= lo.value.datum().abs() + TOL),
            _ => prop_assert_eq!(hi.value.datum(), lo.value.datum()),
        }
    }

    #[test]
    fn gains_grow_with_magnitude(
        base in 0.0..0.5f64, step in 0.0..0.5f64, gap in 0.01..0.5f64, profile in profile(),
    ) {
        let (vf, p) = setup(1.0, profile);
        let z_j = Bui::certain(base).unwrap();
        let near = Bui::certain(base + gap).unwrap();
        let far = Bui::certain((base + gap + step).min(1.0)).unwrap();
        let w = WeightVector::new(vec![0.4, 0.6]).unwrap();
        let other = Bui::new(0.3, 0.7).unwrap();
        let m1 = DecisionMatrix::from_grid(vec![vec![near, other], vec![z_j, other]], w.clone()).unwrap();
        let m2 = DecisionMatrix::from_grid(vec![vec![far, other], vec![z_j, other]], w).unwrap();
        let d1 = pair_dominance(0, 1, &m1, &vf, &p).unwrap().datum();
        let d2 = pair_dominance(0, 1, &m2, &vf, &p).unwrap().datum();
        prop_assert!(d2 >= d1 - TOL);
    }

    #[test]
    fn dominance_diagonal_is_zero(m in matrix(5, 4), profile in profile()) {
        let (vf, p) = setup(1.0, profile);
        let d = dominance_matrix(&m, &vf, &p).unwrap();
        for i in 0..d.size() {
            prop_assert_eq!(d.get(i, i), ExtendedBui::zero());
            for j in 0..d.size() {
                prop_assert!((0.0..=1.0).contains(&d.get(i, j).certainty()));
            }
        }
    }

    #[test]
    fn criterion_order_is_irrelevant(m in matrix(5, 4), profile in profile(), shift in 0usize..4) {
        let (vf, p) = setup(1.0, profile);
        let k = m.n_criteria();
        let perm: Vec<usize> = (0..k).map(|i| (i + shift) % k).rev().collect();
        let permuted = DecisionMatrix::new(
            m.alternatives().to_vec(),
            perm.iter().map(|&i| m.criteria()[i].clone()).collect(),
            m.assessments().iter().map(|row| perm.iter().map(|&i| row[i]).collect()).collect(),
            perm.iter().map(|&i| m.directions()[i]).collect(),
            WeightVector::new(perm.iter().map(|&i| m.weights().get(i)).collect()).unwrap(),
        ).unwrap();
        let a = rank(&m, &vf, &p).unwrap();
        let b = rank(&permuted, &vf, &p).unwrap();
        for (x, y) in a.performances.iter().zip(&b.performances) {
            prop_assert!((x.datum() - y.datum()).abs() <= 1e-10 * x.datum().abs().max(1.0));
            prop_assert!((x.certainty() - y.certainty()).abs() <= TOL);
        }
        let gaps_clear = a.scores.iter().enumerate().all(|(i, s)| {
            a.scores.iter().skip(i + 1).all(|t| (s - t).abs() > 1e-6)
        });
        if gaps_clear {
            prop_assert_eq!(a.order, b.order);
        }
    }

    #[test]
    fn normalization_ignores_shifts(
        data in prop::collection::vec((-5.0..5.0f64, unit()), 1..8),
        shift in -10.0..10.0f64,
    ) {
        let perf: Vec<ExtendedBui> = data.iter().map(|&(x, c)| ExtendedBui::new(x, c).unwrap()).collect();
        let shifted: Vec<ExtendedBui> =
            data.iter().map(|&(x, c)| ExtendedBui::new(x + shift, c).unwrap()).collect();
        let a = normalize(&perf).unwrap();
        let b = normalize(&shifted).unwrap();
        prop_assume!(!a.degenerate_spread && !b.degenerate_spread);
        for (x, y) in a.values.iter().zip(&b.values) {
            prop_assert!((x.datum() - y.datum()).abs() <= 1e-9);
            prop_assert_eq!(x.certainty(), y.certainty());
        }
    }

    #[test]
    fn document_round_trip(m in matrix(4, 4)) {
        let doc = problem::DecisionProblemDocument {
            alternatives: m.alternatives().to_vec(),
            criteria: m.criteria().iter().zip(m.weights().as_slice()).map(|(n, &w)| problem::CriterionSpec {
                name: n.clone(), weight: w, direction: Direction::Benefit,
            }).collect(),
            assessments: m.assessments().iter().map(|r| r.iter().map(|&b| b.into()).collect()).collect(),
            params: TodimParams::default(),
        };
        let once = problem::parse_problem_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&once, &doc);
        prop_assert_eq!(problem::parse_problem_json(&once.to_json()).unwrap(), once);
    }

    #[test]
    fn bui_text_round_trip(a in bui()) {
        let parsed: Bui = a.to_string().parse().unwrap();
        prop_assert!((parsed.datum() - a.datum()).abs() <= 5e-7);
        prop_assert!((parsed.certainty() - a.certainty()).abs() <= 5e-7);
    }
}

#[test]
fn row_sums_can_disagree_with_pairwise_succeeds() {
    // a succeeds b pairwise, but b collects more possibility against c
    let a = Bui::new(0.5, 1.0).unwrap();
    let b = Bui::new(0.0, 0.02).unwrap();
    let c = Bui::new(0.6, 1.0).unwrap();
    assert_eq!(outrank(a, b), OutrankRelation::Succeeds);
    let r = rank_by_possibility(&[("a".into(), a), ("b".into(), b), ("c".into(), c)]).unwrap();
    assert_eq!(r.order, vec!["c", "b", "a"]);
    assert!((r.scores[0] - (0.5 + 0.5 / 0.98)).abs() < 1e-12);
}
