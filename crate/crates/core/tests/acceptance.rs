//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use common::*;
use tilekit_core::fiid::*;
use tilekit_core::rational::{int, rat};
use tilekit_core::rng::CounterStream;
use tilekit_core::torus::*;
use tilekit_core::*;

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dilation_lemma() -> Outcome {
    let mut tilings = 0usize;
    let mut scans = 0usize;
    for n in 2..=30u64 {
        let radix = Radix::new(&[n]);
        let table = radix.table();
        let q = QuotientSpec::cyclic(n).unwrap();
        for k in (1..=5).filter(|k| n % k == 0) {
            let rs: Vec<i64> = (-(n as i64)..=n as i64)
                .filter(|r| gcd(r.unsigned_abs(), k) == 1)
                .collect();
            let results: Vec<std::result::Result<(usize, usize), String>> =
                tiles_through_zero(n as usize, k as usize)
                    .par_iter()
                    .map(|tile| {
                        let f = elements(&radix, tile);
                        let cat = enumerate_tilings(&q, &f).map_err(|e| e.to_string())?;
                        let mut local = (0, 0);
                        for sol in &cat.solutions {
                            let set = PeriodicSet::from_indices(&q, sol.iter().copied()).unwrap();
                            let scan =
                                dilation_scan(&q, &f, &set, &rs).map_err(|e| e.to_string())?;
                            for entry in &scan {
                                let dilated: Vec<usize> =
                                    tile.iter().map(|&x| radix.scale(entry.r, x)).collect();
                                let distinct =
                                    dilated.iter().collect::<BTreeSet<_>>().len() == dilated.len();
                                ensure(
                                    entry.report.is_tiling && !entry.report.has_collisions(),
                                    || format!("Z/{n} F={tile:?} A={sol:?} r={}", entry.r),
                                )?;
                                ensure(distinct && is_tiling(&table, &dilated, sol), || {
                                    format!(
                                        "oracle disagrees: Z/{n} F={tile:?} A={sol:?} r={}",
                                        entry.r
                                    )
                                })?;
                            }
                            local.0 += 1;
                            local.1 += scan.len();
                        }
                        Ok(local)
                    })
                    .collect();
            for r in results {
                let (t, s) = r?;
                tilings += t;
                scans += s;
            }
        }
    }
    Ok(format!("{tilings} tilings, {scans} dilations"))
}

fn frobenius() -> Outcome {
    let mut rng = CounterStream::new(2024, 2);
    let primes = [2i64, 3, 5, 7, 11, 13];
    for case in 0..1000 {
        let q = match rng.below(3) {
            0 => QuotientSpec::cyclic(2 + rng.below(60)).unwrap(),
            1 => {
                let a = 2 + rng.below(8);
                quotient(&[a, a * (1 + rng.below(3))])
            }
            _ => QuotientSpec::new(GroupSpec::free(2), vec![1 + rng.below(7), 1 + rng.below(7)])
                .unwrap(),
        };
        let radix = Radix::new(q.moduli());
        let size = radix.size;
        let k = 1 + rng.below(6.min(size as u64)) as usize;
        let mut idx = BTreeSet::new();
        while idx.len() < k {
            idx.insert(rng.below(size as u64) as usize);
        }
        let idx: Vec<usize> = idx.into_iter().collect();
        let p = primes[rng.below(6) as usize];
        let tile: Vec<GroupElement> = idx.iter().map(|&i| q.element(i)).collect();
        let rep = frobenius_check(&q, &tile, p).map_err(|e| e.to_string())?;

        let mut power = vec![0i64; size];
        power[0] = 1;
        for _ in 0..p {
            let mut next = vec![0i64; size];
            for (x, &c) in power.iter().enumerate().filter(|(_, c)| **c != 0) {
                for &f in &idx {
                    let y = radix.add(x, f);
                    next[y] = (next[y] + c) % p;
                }
            }
            power = next;
        }
        let mut dilated = vec![0i64; size];
        for &f in &idx {
            let y = radix.scale(p, f);
            dilated[y] = (dilated[y] + 1) % p;
        }
        let lhs: Vec<i64> = rep
            .lhs
            .to_dense(&q)
            .unwrap()
            .iter()
            .map(|c| c.rem_euclid(p))
            .collect();
        ensure(rep.holds, || {
            format!("case {case}: fails for {:?} F={idx:?} p={p}", q.moduli())
        })?;
        ensure(lhs == power && power == dilated, || {
            format!("case {case}: oracle mismatch")
        })?;
    }
    Ok("1000 instances".into())
}

fn structure() -> Outcome {
    let mut checked = 0usize;
    for factors in abelian_groups(30) {
        let q = quotient(&factors);
        let radix = Radix::new(&factors);
        let table = radix.table();
        let neg: Vec<usize> = (0..radix.size).map(|x| radix.neg(x)).collect();
        let n = radix.size as u64;
        for k in (1..=5u64).filter(|k| n.is_multiple_of(*k)) {
            let results: Vec<std::result::Result<usize, String>> =
                tiles_through_zero(n as usize, k as usize)
                    .par_iter()
                    .map(|tile| {
                        let f = elements(&radix, tile);
                        let cat = enumerate_tilings(&q, &f).map_err(|e| e.to_string())?;
                        for sol in &cat.solutions {
                            let set = PeriodicSet::from_indices(&q, sol.iter().copied()).unwrap();
                            for norm in
                                [QNormalization::TileSize, QNormalization::SmallPrimeProduct]
                            {
                                let dec =
                                    decompose(&q, &f, &set, norm).map_err(|e| e.to_string())?;
                                check_decomposition(&q, &f, &set, &dec).map_err(|e| {
                                    format!("{factors:?} F={tile:?} A={sol:?} {norm:?}: {e}")
                                })?;
                            }
                            let dec = decompose(&q, &f, &set, QNormalization::TileSize).unwrap();
                            let mut member = vec![false; radix.size];
                            sol.iter().for_each(|&x| member[x] = true);
                            for (c, &fi) in dec.components.iter().zip(tile) {
                                let step = radix.scale(k as i64, fi);
                                let mut len = 1;
                                let mut y = step;
                                while y != 0 {
                                    y = table[y][step];
                                    len += 1;
                                }
                                ensure(c.orbit_len == len, || {
                                    format!("orbit length of {fi} in {factors:?}")
                                })?;
                                let (back_f, back_step) = (neg[fi], neg[step]);
                                for x in 0..radix.size {
                                    let mut z = table[x][back_f];
                                    let mut count = 0;
                                    for _ in 0..len {
                                        count += member[z] as u64;
                                        z = table[z][back_step];
                                    }
                                    ensure(c.counts[x] == count, || {
                                        format!("phi_{fi}({x}) in {factors:?} F={tile:?}")
                                    })?;
                                }
                            }
                        }
                        Ok(cat.count())
                    })
                    .collect();
            for r in results {
                checked += r?;
            }
        }
    }
    Ok(format!("{checked} tilings over all groups of order <= 30"))
}

fn enumeration_oracle() -> Outcome {
    let mut pairs = 0usize;
    for factors in abelian_groups(20) {
        let q = quotient(&factors);
        let radix = Radix::new(&factors);
        let table = radix.table();
        let n = radix.size;
        for k in 1..=n {
            let tiles = if n.is_multiple_of(k) {
                tiles_through_zero(n, k)
            } else if k < n {
                tiles_through_zero(n, k).into_iter().take(3).collect()
            } else {
                vec![]
            };
            let results: Vec<std::result::Result<(), String>> = tiles
                .par_iter()
                .map(|tile| {
                    let cat = enumerate_tilings(&q, &elements(&radix, tile))
                        .map_err(|e| e.to_string())?;
                    let naive = naive_tilings(&table, tile);
                    ensure(cat.solutions == naive, || format!("{factors:?} F={tile:?}"))
                })
                .collect();
            pairs += results.len();
            results
                .into_iter()
                .collect::<std::result::Result<Vec<_>, _>>()?;
        }
    }
    let count = |n: u64, f: &[u64]| {
        let tile: Vec<GroupElement> = f.iter().map(|&r| GroupElement::torsion(vec![r])).collect();
        enumerate_tilings(&QuotientSpec::cyclic(n).unwrap(), &tile)
            .unwrap()
            .count()
    };
    let counts = (count(4, &[0, 1]), count(4, &[0, 2]), count(6, &[0, 1, 2]));
    ensure(counts == (2, 4, 3), || format!("counts {counts:?}"))?;
    Ok(format!("{pairs} (group, tile) pairs; counts 2/4/3"))
}

fn torus_examples() -> Outcome {
    let quarter = CellSet::from_cells(2, 2, &[vec![0, 0]]).unwrap();
    let halves: Vec<Vec<Rational>> = [(0, 0), (1, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(x, y)| vec![rat(x, 2), rat(y, 2)])
        .collect();
    ensure(
        verify_rational_torus_tiling(&halves, &quarter)
            .unwrap()
            .is_tiling,
        || "half shifts".into(),
    )?;

    let (a9, f0, f9) = disconnected_example();
    ensure(
        verify_rational_torus_tiling(&f0, &a9).unwrap().is_tiling,
        || "disconnected surrogate".into(),
    )?;
    ensure(verify_symbolic_tiling(&f9, &a9).unwrap().certified, || {
        "disconnected symbolic".into()
    })?;
    let dec = velocity_decomposition(&f9).unwrap();
    ensure(
        dec.classes == vec![vec![0, 1], vec![2, 3], vec![4, 5, 6, 7]],
        || format!("{:?}", dec.classes),
    )?;
    ensure(dec.common_direction == Some(vec![1, 0]), || {
        "disconnected direction".into()
    })?;
    let strip = verify::disjoint_union(&f0[..2], &a9).unwrap().unwrap();
    ensure(verify_invariance_along(&strip, &[1, 0]).unwrap(), || {
        "first class strip".into()
    })?;
    ensure(!verify_invariance_along(&a9, &[1, 0]).unwrap(), || {
        "tile alone is not a strip".into()
    })?;
    ensure(
        connected_case(&f9, &a9) == Err(TileError::ConnectedRequired),
        || "disconnected case".into(),
    )?;

    let (a10, f10) = connected_example();
    ensure(
        verify_symbolic_tiling(&f10, &a10).unwrap().certified,
        || "connected symbolic".into(),
    )?;
    let dec = velocity_decomposition(&f10).unwrap();
    ensure(dec.classes == vec![vec![0, 1], vec![2, 3]], || {
        format!("{:?}", dec.classes)
    })?;
    let alpha = SymbolicScalar::symbol("a");
    let zero = SymbolicScalar::default();
    ensure(
        dec.alphas == Some(vec![zero.clone(), zero, alpha.clone(), alpha]),
        || "alphas".into(),
    )?;
    match connected_case(&f10, &a10).unwrap() {
        ConnectedReport::Sliding { m: 2, parts, .. }
            if parts.iter().map(|p| p.members.clone()).collect::<Vec<_>>()
                == vec![vec![0, 1], vec![2, 3]] => {}
        other => return Err(format!("connected case: {other:?}")),
    }

    let (a11, f11) = cube_example();
    ensure(
        verify_symbolic_tiling(&f11, &a11).unwrap().certified,
        || "cube symbolic".into(),
    )?;
    let dec = velocity_decomposition(&f11).unwrap();
    ensure(
        dec.classes == vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]],
        || format!("{:?}", dec.classes),
    )?;
    ensure(dec.normalization.is_rational(), || {
        "cube normalization".into()
    })?;
    Ok("four examples".into())
}

fn random_rational(rng: &mut CounterStream, max_den: u64, span: i64) -> Rational {
    let den = 1 + rng.below(max_den) as i64;
    let num = rng.below((2 * span * den + 1) as u64) as i64 - span * den;
    rat(num, den)
}

fn interval_lemma() -> Outcome {
    let mut rng = CounterStream::new(52, 6);
    for case in 0..100_000 {
        let m = 1 + rng.below(4);
        let den = 1 + rng.below(12) as i64;
        let len = rat(1 + rng.below(3 * den as u64) as i64, den);
        let c = random_rational(&mut rng, 12, 20);
        let f0 = random_rational(&mut rng, 12, 20);
        let k = 1 + rng.below(6) as i64;
        let f = RationalMultiset::from_pairs((0..k).map(|j| (&f0 + &len * int(j), m)));
        let psi = StepFunction::constant_on(c.clone(), &c + &len, rat(1, m as i64)).unwrap();
        let (a, b) = (&f0 + &c, &f0 + &c + &len * int(k));
        let got = classify_connected(&f, &psi, &a, &b).map_err(|e| format!("case {case}: {e}"))?;
        let want = ConnectedClassification {
            m,
            c: c.clone(),
            c_prime: &c + &len,
        };
        ensure(got == want, || format!("case {case}: {got:?} != {want:?}"))?;
    }
    let f = RationalMultiset::from_points([int(0), int(1)]);
    let psi = StepFunction::indicator_union(&[(int(0), int(1)), (int(2), int(3))]).unwrap();
    ensure(
        classify_connected(&f, &psi, &int(0), &int(4)) == Err(TileError::ConnectedRequired),
        || "disconnected counterexample accepted".into(),
    )?;
    Ok("100000 instances; counterexample rejected".into())
}

fn fiid_suite() -> Outcome {
    let trivial = FiniteGroupTable::trivial();
    let family = two_tile_family();
    let bad: Vec<u64> = (0..100u64)
        .into_par_iter()
        .filter(|&seed| {
            let trace = simulate_two_tile(FiidWindow::new(10_000, seed)).unwrap();
            let rep = validate_trace(&trace, &trivial, &family);
            !(rep.coverage_violations == 0
                && trace.s.windows(2).all(|w| w[1] - w[0] >= 2)
                && trace
                    .s_prime
                    .windows(2)
                    .all(|w| (2..=3).contains(&(w[1] - w[0]))))
        })
        .collect();
    ensure(bad.is_empty(), || format!("two-tile seeds {bad:?}"))?;

    let bad: Vec<u64> = (0..20u64)
        .into_par_iter()
        .filter(|&seed| {
            let (g, h, a, trace) = simulate_nonabelian_s3(FiidWindow::new(10_000, seed)).unwrap();
            let coset: BTreeSet<usize> = h.iter().map(|&x| g.mul(x, a)).collect();
            let gnn = trace.sets[0]
                .windows(2)
                .all(|w| coset.iter().any(|&x| g.mul(x, w[1].1) == w[0].1));
            let rep = validate_trace(&trace, &g, &[nonabelian_tile(&g, &h, a).unwrap()]);
            !(gnn && rep.coverage_violations == 0 && trace.s.windows(2).all(|w| w[1] - w[0] >= 3))
        })
        .collect();
    ensure(bad.is_empty(), || format!("S3 seeds {bad:?}"))?;

    let s3 = FiniteGroupTable::symmetric(3).unwrap();
    let mut found = Vec::new();
    for mask in 1u32..64 {
        let h: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
        if s3.check_subgroup(&h).is_err() {
            continue;
        }
        for a in (0..6).filter(|a| !h.contains(a)) {
            if triple_product_check(&s3, &h, a).unwrap() {
                found.push((h.clone(), a));
            }
        }
    }
    ensure(!found.is_empty(), || "no (H, a) with HaHaHa = S3".into())?;
    Ok(format!("100 + 20 runs; {} pairs (H, a) in S3", found.len()))
}

struct CircleCase {
    shifts: Vec<SymbolicScalar>,
    tile: CellSet,
    f0: Vec<Rational>,
    velocity: SymbolicScalar,
}

fn circle_case(
    rng: &mut CounterStream,
    catalogs: &mut HashMap<(u64, Vec<u64>), Vec<Vec<u64>>>,
) -> CircleCase {
    loop {
        let n = 2 + rng.below(11);
        let divisors: Vec<u64> = (1..=n).filter(|k| n.is_multiple_of(*k)).collect();
        let k = divisors[rng.below(divisors.len() as u64) as usize];
        let mut tile = BTreeSet::from([0u64]);
        while (tile.len() as u64) < k {
            tile.insert(rng.below(n));
        }
        let tile: Vec<u64> = tile.into_iter().collect();
        let sols = catalogs.entry((n, tile.clone())).or_insert_with(|| {
            let f: Vec<GroupElement> = tile
                .iter()
                .map(|&r| GroupElement::torsion(vec![r]))
                .collect();
            let cat = enumerate_tilings(&QuotientSpec::cyclic(n).unwrap(), &f).unwrap();
            cat.solutions
                .iter()
                .map(|s| s.iter().map(|&x| x as u64).collect())
                .collect()
        });
        if sols.is_empty() {
            continue;
        }
        let r = 1 + rng.below(3) as usize;
        let assignment: Vec<Vec<u64>> = (0..r)
            .map(|_| sols[rng.below(sols.len() as u64) as usize].clone())
            .collect();
        let a = assemble_circle_tiling(n, &tile, &assignment).unwrap();
        let mut velocity = SymbolicScalar::rational(random_rational(rng, 9, 2));
        for s in 0..1 + rng.below(2) {
            velocity =
                velocity.plus_symbol(&format!("a{s}"), random_rational(rng, 5, 3) + rat(1, 7));
        }
        let f0: Vec<Rational> = tile
            .iter()
            .map(|&x| rat(x as i64, n as i64) + &velocity.rational)
            .collect();
        let shifts = tile
            .iter()
            .map(|&x| velocity.add(&SymbolicScalar::rational(rat(x as i64, n as i64))))
            .collect();
        return CircleCase {
            shifts,
            tile: a,
            f0,
            velocity: velocity.symbolic_part(),
        };
    }
}

fn circle() -> Outcome {
    let mut rng = CounterStream::new(8, 8);
    let mut catalogs = HashMap::new();
    for case in 0..10_000 {
        let c = circle_case(&mut rng, &mut catalogs);
        match circle_rationality(&c.shifts, &c.tile).map_err(|e| format!("case {case}: {e}"))? {
            CircleOutcome::Rational {
                f0,
                velocity,
                report,
            } => {
                ensure(report.is_tiling, || format!("case {case}: surrogate"))?;
                ensure(f0 == c.f0 && velocity == c.velocity, || {
                    format!("case {case}: wrong decomposition")
                })?;
            }
            other => return Err(format!("case {case}: {other:?}")),
        }
    }
    let mut violations = 0;
    while violations < 1000 {
        let mut c = circle_case(&mut rng, &mut catalogs);
        if c.shifts.len() < 2 {
            continue;
        }
        let j = 1 + rng.below(c.shifts.len() as u64 - 1) as usize;
        c.shifts[j] = c.shifts[j].clone().plus_symbol("b", int(1));
        match circle_rationality(&c.shifts, &c.tile).map_err(|e| e.to_string())? {
            CircleOutcome::TheoremViolation {
                substitution_tilings: 0,
                ..
            } => violations += 1,
            other => return Err(format!("violation case {violations}: {other:?}")),
        }
    }
    Ok("10000 rational, 1000 violation inputs".into())
}

fn sine() -> Outcome {
    let mut parts = Vec::new();
    for t in [0.0, 0.37, 1.0] {
        let rep = sine_multitile_check(t, 100_000, 17);
        ensure(rep.violations == 0, || {
            format!("t = {t}: {} violations", rep.violations)
        })?;
        parts.push(format!("t={t}: skipped {}", rep.skipped_boundary));
    }
    Ok(parts.join(", "))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("dilation lemma over cyclic groups", 60, dilation_lemma),
        ("Frobenius identity", 10, frobenius),
        ("structure decomposition", 30, structure),
        ("enumeration vs naive oracle", 60, enumeration_oracle),
        ("torus examples", 10, torus_examples),
        ("interval classification", 60, interval_lemma),
        ("factor-of-iid simulations", 120, fiid_suite),
        ("circle rationality", 30, circle),
        ("three-tile sine tiling", 10, sine),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {budget}s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "AC{} {status} {name}: {detail} [{:.2}s / {budget}s]",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
