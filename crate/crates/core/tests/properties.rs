mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::*;
use tilekit_core::fiid::*;
use tilekit_core::rational::{int, rat};
use tilekit_core::torus::*;
use tilekit_core::*;

fn small_quotient() -> impl Strategy<Value = QuotientSpec> {
    prop_oneof![
        (2u64..40).prop_map(|n| QuotientSpec::cyclic(n).unwrap()),
        (2u64..6, 1u64..4).prop_map(|(a, k)| quotient(&[a, a * k])),
        (1u64..6, 1u64..6)
            .prop_map(|(a, b)| QuotientSpec::new(GroupSpec::free(2), vec![a, b]).unwrap()),
        (1u64..5, 2u64..4).prop_map(|(p, t)| QuotientSpec::new(
            GroupSpec::new(1, vec![t]).unwrap(),
            vec![p]
        )
        .unwrap()),
    ]
}

fn weight(q: &QuotientSpec, terms: &[(usize, i64)]) -> Weight {
    let mut w = Weight::new();
    for &(i, c) in terms {
        w.add_term(q.element(i % q.size()), c).unwrap();
    }
    w
}

fn quotient_and_weights() -> impl Strategy<Value = (QuotientSpec, Weight, Weight, Weight)> {
    small_quotient().prop_flat_map(|q| {
        let terms = || prop::collection::vec((0usize..1000, -5i64..6), 0..6);
        (Just(q), terms(), terms(), terms()).prop_map(|(q, a, b, c)| {
            let (a, b, c) = (weight(&q, &a), weight(&q, &b), weight(&q, &c));
            (q, a, b, c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn convolution_is_commutative_and_associative((q, a, b, c) in quotient_and_weights()) {
        prop_assert_eq!(convolve(&q, &a, &b).unwrap(), convolve(&q, &b, &a).unwrap());
        let left = convolve(&q, &convolve(&q, &a, &b).unwrap(), &c).unwrap();
        let right = convolve(&q, &a, &convolve(&q, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn delta_zero_is_the_identity((q, a, _, _) in quotient_and_weights()) {
        let delta = Weight::delta(q.element(0));
        prop_assert_eq!(convolve(&q, &delta, &a).unwrap(), a.clone());
        prop_assert_eq!(convolve(&q, &a, &delta).unwrap(), a);
    }

    #[test]
    fn dilation_is_an_endomorphism(
        torsion in prop::collection::vec(2u64..9, 0..3),
        rank in 0usize..3,
        r in -20i64..20,
        seed in any::<u64>(),
    ) {
        let spec = GroupSpec::new(rank, torsion.clone()).unwrap();
        let mut rng = tilekit_core::rng::CounterStream::new(seed, 1);
        let mut random = || {
            let free = (0..rank).map(|_| rng.below(41) as i64 - 20).collect();
            let tors = torsion.iter().map(|&m| rng.below(m) as i64).collect();
            spec.element(free, tors).unwrap()
        };
        let (g, h) = (random(), random());
        let lhs = scalar_dilate(&spec, r, &group_add(&spec, &g, &h).unwrap()).unwrap();
        let rhs = group_add(&spec, &scalar_dilate(&spec, r, &g).unwrap(), &scalar_dilate(&spec, r, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// A random tiling of `Z/n` by a tile through zero, when one exists.
fn cyclic_tiling() -> impl Strategy<Value = (u64, Vec<usize>, Vec<usize>)> {
    (2u64..25, 1usize..5, any::<u64>()).prop_filter_map("no tiling", |(n, k, seed)| {
        if !(n as usize).is_multiple_of(k) {
            return None;
        }
        let mut rng = tilekit_core::rng::CounterStream::new(seed, 3);
        let mut tile = std::collections::BTreeSet::from([0usize]);
        while tile.len() < k {
            tile.insert(rng.below(n) as usize);
        }
        let tile: Vec<usize> = tile.into_iter().collect();
        let radix = Radix::new(&[n]);
        let cat =
            enumerate_tilings(&QuotientSpec::cyclic(n).unwrap(), &elements(&radix, &tile)).unwrap();
        if cat.solutions.is_empty() {
            return None;
        }
        let sol = cat.solutions[rng.below(cat.count() as u64) as usize].clone();
        Some((n, tile, sol))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn tiling_status_is_translation_invariant((n, tile, sol) in cyclic_tiling(), g in 0usize..100) {
        let q = QuotientSpec::cyclic(n).unwrap();
        let radix = Radix::new(&[n]);
        let g = g % n as usize;
        let set = PeriodicSet::from_indices(&q, sol.iter().copied()).unwrap();
        let moved_tile: Vec<usize> = tile.iter().map(|&f| (f + g) % n as usize).collect();
        prop_assert!(verify_tiling(&q, &elements(&radix, &tile), &set).unwrap().is_tiling);
        prop_assert!(verify_tiling(&q, &elements(&radix, &moved_tile), &set).unwrap().is_tiling);
        prop_assert!(verify_tiling(&q, &elements(&radix, &tile), &set.translate(g)).unwrap().is_tiling);
        prop_assert_eq!(tile.len() * set.count(), n as usize);
        let full = level_function(&q, &elements(&radix, &tile), &PeriodicSet::full(&q)).unwrap();
        prop_assert!(full.iter().all(|&c| c == tile.len() as i64));
    }

    #[test]
    fn catalogs_are_closed_under_translation_and_dilation((n, tile, _) in cyclic_tiling()) {
        let q = QuotientSpec::cyclic(n).unwrap();
        let radix = Radix::new(&[n]);
        let f = elements(&radix, &tile);
        let cat = enumerate_tilings(&q, &f).unwrap();
        let rs: Vec<i64> = (-(n as i64)..=n as i64).filter(|r| gcd(r.unsigned_abs(), tile.len() as u64) == 1).collect();
        for (i, sol) in cat.solutions.iter().enumerate() {
            let set = cat.solution_set(i);
            prop_assert!(verify_tiling(&q, &f, &set).unwrap().is_tiling);
            let mut moved: Vec<usize> = sol.iter().map(|&a| (a + 1) % n as usize).collect();
            moved.sort_unstable();
            prop_assert!(cat.solutions.binary_search(&moved).is_ok());
            for entry in dilation_scan(&q, &f, &set, &rs).unwrap() {
                prop_assert!(entry.report.is_tiling && !entry.report.has_collisions());
            }
        }
        let covered: usize = cat.orbit_classes.iter().map(Vec::len).sum();
        prop_assert_eq!(covered, cat.count());
    }

    #[test]
    fn decomposition_is_equivariant_and_bounded((n, tile, sol) in cyclic_tiling(), g in 0usize..100) {
        let q = QuotientSpec::cyclic(n).unwrap();
        let radix = Radix::new(&[n]);
        let f = elements(&radix, &tile);
        let g = g % n as usize;
        let set = PeriodicSet::from_indices(&q, sol.iter().copied()).unwrap();
        let base = decompose(&q, &f, &set, QNormalization::TileSize).unwrap();
        let moved = decompose(&q, &f, &set.translate(g), QNormalization::TileSize).unwrap();
        for (c0, c1) in base.components.iter().zip(&moved.components) {
            prop_assert_eq!(c0.orbit_len, c1.orbit_len);
            for x in 0..n as usize {
                prop_assert_eq!(c1.counts[(x + g) % n as usize], c0.counts[x]);
                prop_assert!(c0.counts[x] <= c0.orbit_len);
            }
        }
    }
}

#[test]
fn dominoes_are_rigid() {
    for m in 1..=12u64 {
        let tile = vec![
            GroupElement::torsion(vec![0]),
            GroupElement::torsion(vec![1]),
        ];
        let s = count_and_orbits(&QuotientSpec::cyclic(2 * m).unwrap(), &tile).unwrap();
        assert_eq!(s.count, 2, "M = {m}");
        assert!(s.rigidity.iter().all(|&r| r), "M = {m}");
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..9).prop_map(|(p, q)| rat(p, q))
}

fn step_function() -> impl Strategy<Value = StepFunction> {
    prop::collection::vec((small_rational(), 0i64..5), 1..5).prop_map(|pieces| {
        let mut total = StepFunction::zero();
        for (lo, v) in pieces {
            let piece = StepFunction::constant_on(lo.clone(), lo + rat(1, 2), rat(v, 3)).unwrap();
            total = total.add(&piece);
        }
        total
    })
}

fn multiset() -> impl Strategy<Value = Vec<(Rational, u64)>> {
    prop::collection::vec((small_rational(), 1u64..4), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn step_convolution_is_bilinear(f in multiset(), g in multiset(), p1 in step_function(), p2 in step_function()) {
        let fm = RationalMultiset::from_pairs(f.clone());
        let gm = RationalMultiset::from_pairs(g.clone());
        let both = RationalMultiset::from_pairs(f.into_iter().chain(g));
        prop_assert_eq!(step_convolve(&both, &p1), step_convolve(&fm, &p1).add(&step_convolve(&gm, &p1)));
        prop_assert_eq!(step_convolve(&fm, &p1.add(&p2)), step_convolve(&fm, &p1).add(&step_convolve(&fm, &p2)));
        let two = rat(2, 1);
        prop_assert_eq!(step_convolve(&fm, &p1.scale(&two).unwrap()), step_convolve(&fm, &p1).scale(&two).unwrap());
    }

    #[test]
    fn classification_round_trip(
        m in 1u64..5,
        len in (1i64..25, 1i64..9).prop_map(|(p, q)| rat(p, q)),
        c in small_rational(),
        f0 in small_rational(),
        k in 1i64..7,
    ) {
        let f = RationalMultiset::from_pairs((0..k).map(|j| (&f0 + &len * int(j), m)));
        let psi = StepFunction::constant_on(c.clone(), &c + &len, rat(1, m as i64)).unwrap();
        let (a, b) = (&f0 + &c, &f0 + &c + &len * int(k));
        let got = classify_connected(&f, &psi, &a, &b).unwrap();
        prop_assert_eq!(got, ConnectedClassification { m, c: c.clone(), c_prime: &c + &len });
    }

    #[test]
    fn classification_rejects_non_tilings(f in multiset(), psi in step_function(), a in small_rational()) {
        let fm = RationalMultiset::from_pairs(f);
        let b = &a + int(1);
        if !step_convolve(&fm, &psi).is_indicator_of(&a, &b) {
            prop_assert!(classify_connected(&fm, &psi, &a, &b).is_err());
        }
    }
}

/// `k x l` grid of boxes of size `1/k x 1/l` where row `j` slides along `x`
/// by its own symbol.
fn sliding_rows(k: i64, l: i64, sliding: &[bool]) -> (CellSet, Vec<SymbolicVector>) {
    let q = (k * l) as u64;
    let a = CellSet::from_boxes(2, q, &[vec![(int(0), rat(1, k)), (int(0), rat(1, l))]]).unwrap();
    let mut f = Vec::new();
    for j in 0..l {
        for i in 0..k {
            let mut v = sv(&[rat(i, k), rat(j, l)]);
            if sliding[j as usize] {
                v = v.plus_symbol(&format!("r{j}"), &[int(1), int(0)]);
            }
            f.push(v);
        }
    }
    (a, f)
}

fn sliding_rows_strategy() -> impl Strategy<Value = (i64, i64, Vec<bool>)> {
    (1i64..4, 1i64..4).prop_flat_map(|(k, l)| {
        (
            Just(k),
            Just(l),
            prop::collection::vec(any::<bool>(), l as usize),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn certified_tilings_conserve_measure_and_deform((k, l, sliding) in sliding_rows_strategy(), seed in any::<u64>()) {
        let (a, f) = sliding_rows(k, l, &sliding);
        let plan = SubstitutionPlan { trials: 100, seed, grid_budget: 1 << 18 };
        let rep = verify_symbolic_tiling_with(&f, &a, &plan).unwrap();
        prop_assert!(rep.certified);
        prop_assert!(rep.substitutions.iter().all(|s| s.is_tiling));
        prop_assert_eq!(verify::total_measure(f.len(), &a), int(1));

        let mut directions = f.iter().filter(|v| !v.is_rational()).map(|v| weak_rational_direction(v).unwrap());
        if let Some(first) = directions.next() {
            let is_direction = matches!(&first, WeakDirection::Direction { .. });
            prop_assert!(is_direction);
            prop_assert!(directions.all(|d| d == first));
        }

        match connected_case(&f, &a).unwrap() {
            ConnectedReport::AllRational => prop_assert!(sliding.iter().all(|&s| !s) || sliding.iter().all(|&s| s)),
            ConnectedReport::Sliding { m, parts, .. } => {
                prop_assert!(parts.iter().all(|p| p.members.len() as u64 == m));
                prop_assert!(parts.iter().all(|p| p.strip_invariant));
            }
        }
    }

    #[test]
    fn circle_translates_are_rational(n in 2u64..10, r in 1u64..4, v in small_rational(), seed in any::<u64>()) {
        let all: Vec<u64> = (0..n).collect();
        let mut rng = tilekit_core::rng::CounterStream::new(seed, 4);
        let assignment: Vec<Vec<u64>> = (0..r).map(|_| vec![rng.below(n)]).collect();
        let a = assemble_circle_tiling(n, &all, &assignment).unwrap();
        let velocity = SymbolicScalar::rational(v).plus_symbol("t", rat(1, 3));
        let shifts: Vec<SymbolicScalar> =
            all.iter().map(|&x| velocity.add(&SymbolicScalar::rational(rat(x as i64, n as i64)))).collect();
        let out = circle_rationality(&shifts, &a).unwrap();
        let rational = matches!(out, CircleOutcome::Rational { .. });
        prop_assert!(rational);
    }

    #[test]
    fn fiid_is_deterministic_and_shift_consistent(seed in any::<u64>(), k in -50i64..50, n in 200usize..800) {
        let w = FiidWindow::new(n, seed);
        let a = simulate_two_tile(w).unwrap();
        prop_assert_eq!(&a, &simulate_two_tile(w).unwrap());
        let b = simulate_two_tile(w.shifted(k)).unwrap();
        let (lo, hi) = (a.core.0.max(b.core.0), a.core.1.min(b.core.1));
        for i in 0..2 {
            let cut = |t: &FiidTrace| t.sets[i].iter().copied().filter(|(x, _)| (lo..hi).contains(x)).collect::<Vec<_>>();
            prop_assert_eq!(cut(&a), cut(&b));
        }

        let (g, h, x, s1) = simulate_nonabelian_s3(FiidWindow::new(n, seed)).unwrap();
        let (_, _, _, s2) = simulate_nonabelian_s3(FiidWindow::new(n, seed).shifted(k)).unwrap();
        let (lo, hi) = (s1.core.0.max(s2.core.0), s1.core.1.min(s2.core.1));
        let cut = |t: &FiidTrace| t.sets[0].iter().copied().filter(|(x, _)| (lo..hi).contains(x)).collect::<Vec<_>>();
        prop_assert_eq!(cut(&s1), cut(&s2));
        let rep = validate_trace(&s1, &g, &[nonabelian_tile(&g, &h, x).unwrap()]);
        prop_assert_eq!(rep.coverage_violations, 0);
    }
}

#[test]
fn json_round_trips() {
    let (a, f) = connected_example();
    let cells: CellSet = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
    assert_eq!(cells, a);
    let text = serde_json::to_string(&f[2]).unwrap();
    assert_eq!(text, r#"{"rat":["0/1","1/2"],"irr":{"a":["1/1","0/1"]}}"#);
    let back: SymbolicVector = serde_json::from_str(&text).unwrap();
    assert_eq!(back, f[2]);
    let s: BTreeMap<String, SymbolicScalar> = BTreeMap::from([(
        "x".into(),
        SymbolicScalar::rational(rat(-2, 4)).plus_symbol("b", int(3)),
    )]);
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(text, r#"{"x":{"rat":"-1/2","irr":{"b":"3/1"}}}"#);
}
