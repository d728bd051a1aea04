//! Acceptance gate for the whole workspace: ten checks, each pinned to an
//! independently computed answer. The oracles are deliberately primitive so
//! that they cannot share a bug with the code under test: explicit rank
//! inequalities on random matrices, an exhaustive assignment search for the
//! bottleneck distance, Euler-style Betti counts from bit-matrix elimination,
//! and small fixtures whose homology can be checked by hand.
//!
//! Each test prints one verdict line so a log scan shows the gate at a glance.

use std::collections::BTreeMap;
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use catpersist::coloring::{
    colored_rank_check, group_color_functions, group_colored_diagram, poset_color_functions,
    poset_colored_diagram, sum_of_functions, CharacterTable, ColoredDiagram, ConjClass, Irrep,
};
use catpersist::complex::{
    apply_group_average_filtration, build_poset_family, vietoris_rips, FilteredComplex,
    GroupAction, MetricData, PosetFamily, Simplex,
};
use catpersist::distance::{
    bottleneck, interleaving_on_intervals, multicolored_bottleneck, verify_interleaving_inequality,
};
use catpersist::field::{FieldSpec, Matrix};
use catpersist::persistence::{
    component_persistence_function, homology_persistence_function, reduce_to_intervals,
    Cornerpoint, IntervalModule, PersistenceDiagram, PersistenceFunction,
};
use catpersist::value::{midpoint, rat_from_f64, rat_frac, rat_int, ExtValue, Rat};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const THREE_FIELDS: [FieldSpec; 3] = [FieldSpec::Gf(2), FieldSpec::Gf(5), FieldSpec::Rational];

fn random_matrix(rng: &mut ChaCha8Rng, field: FieldSpec, rows: usize, cols: usize) -> Matrix {
    let entries: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    Matrix::from_int_rows(field, &entries)
}

fn random_metric(rng: &mut ChaCha8Rng, n: usize) -> MetricData {
    let mut rows = vec![vec![rat_int(0); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rat_int(rng.gen_range(1..9));
            rows[i][j] = d.clone();
            rows[j][i] = d;
        }
    }
    MetricData::new(rows, None, None).unwrap()
}

/// Probe values that separate every pair of critical values and extend one
/// step past both ends, where the function has gone constant.
fn probe_values(critical: &[Rat]) -> Vec<Rat> {
    let mut probes = Vec::new();
    if critical.is_empty() {
        return vec![rat_int(0), rat_int(1)];
    }
    probes.push(critical[0].clone() - rat_int(1));
    for (i, c) in critical.iter().enumerate() {
        probes.push(c.clone());
        if let Some(next) = critical.get(i + 1) {
            probes.push(midpoint(c, next));
        }
    }
    probes.push(critical.last().unwrap().clone() + rat_int(1));
    probes.dedup();
    probes
}

// ---------------------------------------------------------------------------
// 1. Rank inequalities on random composable chains.

#[test]
fn criterion_01_rank_inequalities_on_random_chains() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9001);
    for chain in 0..1000usize {
        let field = THREE_FIELDS[chain % THREE_FIELDS.len()];
        let dims: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=8)).collect();
        let f = random_matrix(&mut rng, field, dims[1], dims[0]);
        let g = random_matrix(&mut rng, field, dims[2], dims[1]);
        let h = random_matrix(&mut rng, field, dims[3], dims[2]);
        let gf = g.mul(&f);
        let hg = h.mul(&g);
        let hgf = h.mul(&gf);
        let (rf, rg, rgf, rhg, rhgf) = (f.rank(), g.rank(), gf.rank(), hg.rank(), hgf.rank());
        // Composing can only lose rank, on either side.
        assert!(rgf <= rf && rgf <= rg, "chain {chain}: rank grew under composition");
        assert!(rhgf <= rgf && rhgf <= rhg, "chain {chain}: rank grew under composition");
        // The rectangle inequality; this is what makes the multiplicity of
        // every box in a persistence function nonnegative.
        assert!(
            rgf + rhg <= rg + rhgf,
            "chain {chain}: rectangle inequality failed ({rgf} + {rhg} > {rg} + {rhgf})"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}, budget 10s");
    println!("criterion 01 (rank inequalities, 1000 random chains over GF(2)/GF(5)/Q): PASS in {elapsed:?}");
}

// ---------------------------------------------------------------------------
// 2. Kernel dimension of a surjection equals the dimension defect.

#[test]
fn criterion_02_surjection_kernels_match_the_dimension_defect() {
    let mut rng = ChaCha8Rng::seed_from_u64(9002);
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < 500 {
        attempts += 1;
        assert!(attempts < 50_000, "random surjections should not be this rare");
        let field = THREE_FIELDS[done % THREE_FIELDS.len()];
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(rows..=rows + 6);
        let m = random_matrix(&mut rng, field, rows, cols);
        if m.rank() < rows {
            continue;
        }
        let kernel = m.kernel_basis();
        assert_eq!(
            kernel.cols(),
            cols - rows,
            "kernel dimension of a surjection must equal cols - rows"
        );
        assert!(m.mul(&kernel).is_zero(), "kernel basis must map to zero");
        assert_eq!(kernel.rank(), kernel.cols(), "kernel basis must be independent");
        done += 1;
    }
    println!("criterion 02 (kernel dimension on 500 random surjections): PASS");
}

// ---------------------------------------------------------------------------
// 3. The multiplicity function and the interval reduction agree, point by
//    point and box by box.

fn points_in_box(
    d: &PersistenceDiagram,
    alpha: &ExtValue,
    beta: &ExtValue,
    gamma: &ExtValue,
    delta: &ExtValue,
) -> u64 {
    d.points()
        .iter()
        .filter(|p| &p.birth > alpha && &p.birth <= beta && &p.death > gamma && &p.death <= delta)
        .map(|p| p.multiplicity)
        .sum()
}

#[test]
fn criterion_03_diagrams_from_ranks_and_from_reduction_agree() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9003);
    for trial in 0..300usize {
        let n = rng.gen_range(4..=8);
        let m = random_metric(&mut rng, n);
        let scale = rat_int(rng.gen_range(3..=6));
        let c = vietoris_rips(&m, 2, &scale).unwrap();
        for k in 0..=2usize {
            let f = homology_persistence_function(&c, k, FieldSpec::Gf(2));
            let from_ranks = f.diagram().unwrap();
            let from_reduction = reduce_to_intervals(&c, k, FieldSpec::Gf(2)).diagram();
            assert_eq!(from_ranks, from_reduction, "trial {trial} degree {k}");

            // Boxes: the rank alternating sum, the diagram produced by the
            // rank route, and the diagram produced by the reduction route
            // must count the same points in every box.
            let probes = probe_values(f.critical_values());
            if probes.len() < 4 {
                continue;
            }
            for _ in 0..17 {
                let (q0, q1, q2, q3) = loop {
                    let mut qs: Vec<usize> =
                        (0..4).map(|_| rng.gen_range(0..probes.len())).collect();
                    qs.sort_unstable();
                    if qs[0] < qs[1] && qs[1] <= qs[2] && qs[2] < qs[3] {
                        break (qs[0], qs[1], qs[2], qs[3]);
                    }
                };
                let (a, b, g, d) = (&probes[q0], &probes[q1], &probes[q2], &probes[q3]);
                let (ea, eb, eg) = (
                    ExtValue::Finite(a.clone()),
                    ExtValue::Finite(b.clone()),
                    ExtValue::Finite(g.clone()),
                );
                // A quarter of the boxes reach all the way up, catching the
                // classes that never die.
                let ed = if rng.gen_bool(0.25) {
                    ExtValue::PosInf
                } else {
                    ExtValue::Finite(d.clone())
                };
                let counted = points_in_box(&from_reduction, &ea, &eb, &eg, &ed);
                assert_eq!(
                    from_ranks.box_count(&ea, &eb, &eg, &ed),
                    counted,
                    "trial {trial} degree {k}: box counts disagree across the two routes"
                );
                if let ExtValue::Finite(d) = &ed {
                    // The last probe sits past every critical value, so a box
                    // capped there counts exactly what the ranks say.
                    let alternating =
                        f.evaluate(b, g) - f.evaluate(a, g) - f.evaluate(b, d) + f.evaluate(a, d);
                    assert_eq!(
                        alternating, counted as i64,
                        "trial {trial} degree {k}: alternating sum disagrees with the diagram"
                    );
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}, budget 60s");
    println!("criterion 03 (rank vs reduction diagrams, 300 random complexes): PASS in {elapsed:?}");
}

// ---------------------------------------------------------------------------
// 4. Connected components computed combinatorially match degree-0 homology.

#[test]
fn criterion_04_components_match_degree_zero_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(9004);
    for trial in 0..200usize {
        let n = rng.gen_range(3..=9);
        let m = random_metric(&mut rng, n);
        let scale = rat_int(rng.gen_range(2..=8));
        let c = vietoris_rips(&m, 1, &scale).unwrap();
        let pi0 = component_persistence_function(&c);
        let field = THREE_FIELDS[trial % THREE_FIELDS.len()];
        let h0 = homology_persistence_function(&c, 0, field);
        assert_eq!(
            pi0.diagram().unwrap(),
            h0.diagram().unwrap(),
            "trial {trial}: component and homology diagrams differ"
        );
        let probes = probe_values(pi0.critical_values());
        for u in &probes {
            for v in probes.iter().filter(|v| *v >= u) {
                assert_eq!(pi0.evaluate(u, v), h0.evaluate(u, v), "trial {trial} at ({u}, {v})");
            }
        }
    }
    println!("criterion 04 (components vs degree-0 homology, 200 graph filtrations): PASS");
}

// ---------------------------------------------------------------------------
// 5. The bottleneck solver against an exhaustive assignment search.

fn linf_local(p: &(ExtValue, ExtValue), q: &(ExtValue, ExtValue)) -> ExtValue {
    p.0.abs_diff(&q.0).max(p.1.abs_diff(&q.1))
}

fn diag_local(p: &(ExtValue, ExtValue)) -> ExtValue {
    match (&p.0, &p.1) {
        (ExtValue::Finite(b), ExtValue::Finite(d)) => ExtValue::Finite((d - b) / rat_int(2)),
        _ => ExtValue::PosInf,
    }
}

/// Slowest correct answer: send every left point to the diagonal or to a
/// distinct right point, leftovers on the right to the diagonal, and keep
/// the cheapest maximum over all such assignments.
fn exhaustive_bottleneck(p1: &[(ExtValue, ExtValue)], p2: &[(ExtValue, ExtValue)]) -> ExtValue {
    fn go(
        i: usize,
        p1: &[(ExtValue, ExtValue)],
        p2: &[(ExtValue, ExtValue)],
        taken: &mut Vec<bool>,
        cur: ExtValue,
        best: &mut ExtValue,
    ) {
        if cur >= *best {
            return;
        }
        if i == p1.len() {
            let mut total = cur;
            for (j, t) in taken.iter().enumerate() {
                if !t {
                    total = total.max(diag_local(&p2[j]));
                }
            }
            if total < *best {
                *best = total;
            }
            return;
        }
        go(i + 1, p1, p2, taken, cur.clone().max(diag_local(&p1[i])), best);
        for j in 0..p2.len() {
            if !taken[j] {
                taken[j] = true;
                let cost = cur.clone().max(linf_local(&p1[i], &p2[j]));
                go(i + 1, p1, p2, taken, cost, best);
                taken[j] = false;
            }
        }
    }
    let mut best = ExtValue::PosInf;
    let mut taken = vec![false; p2.len()];
    go(0, p1, p2, &mut taken, ExtValue::int(0), &mut best);
    best
}

fn coords(d: &PersistenceDiagram) -> Vec<(ExtValue, ExtValue)> {
    let mut out = Vec::new();
    for p in d.points() {
        for _ in 0..p.multiplicity {
            out.push((p.birth.clone(), p.death.clone()));
        }
    }
    out
}

/// Up to `max_points` off-diagonal points counted with multiplicity; small
/// value ranges so that repeats and ties come up often.
fn small_diagram(rng: &mut ChaCha8Rng, max_points: usize) -> PersistenceDiagram {
    let n = rng.gen_range(0..=max_points);
    let points: Vec<Cornerpoint> = (0..n)
        .map(|_| {
            let den = rng.gen_range(1..3);
            let birth = rat_frac(rng.gen_range(0..8), den);
            let death = if rng.gen_bool(0.12) {
                ExtValue::PosInf
            } else {
                ExtValue::Finite(&birth + rat_frac(rng.gen_range(1..6), den))
            };
            Cornerpoint { birth: ExtValue::Finite(birth), death, color: None, multiplicity: 1 }
        })
        .collect();
    PersistenceDiagram::new(points).unwrap()
}

#[test]
fn criterion_05_bottleneck_equals_the_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(9005);
    for trial in 0..200usize {
        let d1 = small_diagram(&mut rng, 6);
        let d2 = small_diagram(&mut rng, 6);
        let (value, matching) = bottleneck(&d1, &d2);
        let expected = exhaustive_bottleneck(&coords(&d1), &coords(&d2));
        assert_eq!(value, expected, "trial {trial}: solver disagrees with the search");
        assert!(matching.certifies(&d1, &d2), "trial {trial}: matching does not certify");
    }
    println!("criterion 05 (bottleneck vs exhaustive search, 200 random pairs): PASS");
}

// ---------------------------------------------------------------------------
// 6. Stability: shifting every filtration value by at most epsilon moves the
//    diagram by at most epsilon in bottleneck distance.

#[test]
fn criterion_06_perturbations_move_diagrams_at_most_epsilon() {
    let mut rng = ChaCha8Rng::seed_from_u64(9006);
    let shifts = [rat_frac(1, 10), rat_frac(1, 2), rat_int(1)];
    let mut violations = 0usize;
    for trial in 0..200usize {
        let n = rng.gen_range(4..=7);
        let m = random_metric(&mut rng, n);
        let c = vietoris_rips(&m, 2, &rat_int(rng.gen_range(3..=6))).unwrap();
        let eps = &shifts[trial % shifts.len()];
        let k = trial % 3;
        if !verify_interleaving_inequality(&c, eps, k, FieldSpec::Gf(2), &mut rng) {
            violations += 1;
            eprintln!("trial {trial}: stability violated at eps {eps} in degree {k}");
        }
    }
    assert_eq!(violations, 0, "stability must hold in every trial");
    println!("criterion 06 (stability, 200 perturbation trials at three shift sizes): PASS");
}

// ---------------------------------------------------------------------------
// 7. Per color, the interleaving distance of interval modules equals the
//    bottleneck distance, and the certificate checks out at that value.

fn random_colored_diagram(rng: &mut ChaCha8Rng, palette: &[&str]) -> ColoredDiagram {
    let n = rng.gen_range(0..5);
    let points: Vec<Cornerpoint> = (0..n)
        .map(|_| {
            let b = rng.gen_range(0..5);
            let death = if rng.gen_bool(0.15) {
                ExtValue::PosInf
            } else {
                ExtValue::int(rng.gen_range(b + 1..8))
            };
            Cornerpoint {
                birth: ExtValue::int(b),
                death,
                color: Some(palette[rng.gen_range(0..palette.len())].to_string()),
                multiplicity: rng.gen_range(1..3),
            }
        })
        .collect();
    match PersistenceDiagram::new(points) {
        Ok(d) if !d.is_empty() => ColoredDiagram::from_colored_points(&d).unwrap(),
        _ => ColoredDiagram::new(Vec::new()).unwrap(),
    }
}

#[test]
fn criterion_07_interleaving_is_tight_per_color() {
    let mut rng = ChaCha8Rng::seed_from_u64(9007);
    for trial in 0..100usize {
        let c1 = random_colored_diagram(&mut rng, &["x", "y"]);
        let c2 = random_colored_diagram(&mut rng, &["x", "y"]);
        let (colored, _) = multicolored_bottleneck(&c1, &c2);

        let empty = PersistenceDiagram::empty();
        let mut worst = ExtValue::int(0);
        let mut ids: Vec<&str> = c1.ids().into_iter().chain(c2.ids()).collect();
        ids.sort();
        ids.dedup();
        for id in ids {
            let d1 = c1.part(id).map_or(&empty, |p| &p.diagram);
            let d2 = c2.part(id).map_or(&empty, |p| &p.diagram);
            let (per_color, _) = bottleneck(d1, d2);
            let (interleaving, certificate) = interleaving_on_intervals(
                &IntervalModule::from_diagram(d1),
                &IntervalModule::from_diagram(d2),
            )
            .unwrap();
            assert_eq!(interleaving, per_color, "trial {trial} color {id}");
            assert!(certificate.verify(&interleaving), "trial {trial} color {id}");
            worst = worst.max(interleaving);
        }
        assert_eq!(worst, colored, "trial {trial}: colored distance is not the worst color");
    }
    println!("criterion 07 (interleaving tightness per color, 100 random pairs): PASS");
}

// ---------------------------------------------------------------------------
// 8. Weighted color counts always add up to the totals, and isotypic ranks
//    always divide by the irreducible degree.

fn z2_swap_table() -> CharacterTable {
    CharacterTable::new(
        2,
        vec![ConjClass { size: 1, rep: 0 }, ConjClass { size: 1, rep: 1 }],
        vec![
            Irrep { name: "triv".into(), degree: 1, values: vec![rat_int(1), rat_int(1)] },
            Irrep { name: "sgn".into(), degree: 1, values: vec![rat_int(1), rat_int(-1)] },
        ],
    )
    .unwrap()
}

/// Random six-point metric that the swap 0<->3, 1<->4, 2<->5 preserves.
fn random_swap_invariant_metric(rng: &mut ChaCha8Rng) -> MetricData {
    let sigma = [3usize, 4, 5, 0, 1, 2];
    let mut rows = vec![vec![rat_int(0); 6]; 6];
    for i in 0..6 {
        for j in (i + 1)..6 {
            if rows[i][j] != rat_int(0) {
                continue;
            }
            let d = rat_int(rng.gen_range(1..9));
            let (si, sj) = (sigma[i], sigma[j]);
            rows[i][j] = d.clone();
            rows[j][i] = d.clone();
            rows[si][sj] = d.clone();
            rows[sj][si] = d;
        }
    }
    MetricData::new(rows, None, None).unwrap()
}

#[test]
fn criterion_08_colored_counts_always_add_up() {
    let mut rng = ChaCha8Rng::seed_from_u64(9008);

    // Label-poset colorings on random labeled metrics.
    for trial in 0..20usize {
        let n = rng.gen_range(4..=6);
        let palette = ["a", "b", "c"];
        let labels: Vec<String> = (0..n)
            .map(|i| {
                if i < 2 {
                    palette[i].to_string()
                } else {
                    palette[rng.gen_range(0..2)].to_string()
                }
            })
            .collect();
        let mut rows = vec![vec![rat_int(0); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = rat_int(rng.gen_range(1..8));
                rows[i][j] = d.clone();
                rows[j][i] = d;
            }
        }
        let m = MetricData::new(rows, Some(labels), None).unwrap();
        let fam = build_poset_family(&m, 2, &rat_int(8)).unwrap();
        for k in 0..=1usize {
            let cd = poset_colored_diagram(&fam, k, FieldSpec::Gf(2)).unwrap();
            let parts: Vec<PersistenceFunction> = poset_color_functions(&fam, k, FieldSpec::Gf(2))
                .unwrap()
                .into_iter()
                .map(|(_, f)| f)
                .collect();
            assert!(
                colored_rank_check(&cd, &sum_of_functions(&parts)),
                "poset trial {trial} degree {k}: weighted counts do not add up"
            );
        }
    }

    // Group colorings: swap-invariant metrics, and the averaging path that
    // makes an arbitrary filtration invariant first. The unwraps also pin
    // down that integer divisibility by the irreducible degree never fails.
    let table = z2_swap_table();
    let sigma = vec![3usize, 4, 5, 0, 1, 2];
    let identity: Vec<usize> = (0..6).collect();
    let action = GroupAction::new(vec![identity, sigma]).unwrap();
    for trial in 0..20usize {
        let invariant = trial % 2 == 0;
        let c = if invariant {
            let m = random_swap_invariant_metric(&mut rng);
            vietoris_rips(&m, 2, &rat_int(rng.gen_range(4..=8))).unwrap()
        } else {
            // Averaging needs the cell set itself to be permutation-closed,
            // so take the complex at full scale before making it invariant.
            let m = random_metric(&mut rng, 6);
            let raw = vietoris_rips(&m, 2, &rat_int(8)).unwrap();
            apply_group_average_filtration(&raw, &action).unwrap()
        };
        assert!(action.preserves_filtration(&c), "group trial {trial}");
        for k in 0..=1usize {
            let cd = group_colored_diagram(&c, &action, &table, k)
                .unwrap_or_else(|e| panic!("group trial {trial} degree {k}: {e}"));
            let plain = homology_persistence_function(&c, k, FieldSpec::Rational);
            assert!(
                colored_rank_check(&cd, &plain),
                "group trial {trial} degree {k}: weighted counts do not add up"
            );
        }
    }
    println!("criterion 08 (colored count additivity, poset and group, 40 random runs): PASS");
}

// ---------------------------------------------------------------------------
// 9. The two illustrated layouts, reproduced end to end with an independent
//    Betti count from bit-matrix elimination.

fn bit_rank(mut rows: Vec<u128>) -> usize {
    let mut rank = 0usize;
    for bit in 0..128 {
        if let Some(pos) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) {
            rows.swap(rank, pos);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> bit & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Betti numbers (b0, b1) over GF(2) of the scale-t complex on the chosen
/// points: edges at pairwise distance <= t, triangles where all three sides
/// are in. Plain Gaussian elimination on bit rows, nothing shared with the
/// library code.
fn gf2_betti_at_scale(m: &MetricData, keep: &[usize], t: &Rat) -> (usize, usize) {
    let n = keep.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if m.dist(keep[a], keep[b]) <= t {
                edges.push((a, b));
            }
        }
    }
    let eidx: BTreeMap<(usize, usize), usize> =
        edges.iter().copied().enumerate().map(|(i, e)| (e, i)).collect();
    let mut triangle_rows: Vec<u128> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let sides = [(a, b), (a, c), (b, c)];
                if sides.iter().all(|e| eidx.contains_key(e)) {
                    triangle_rows
                        .push(sides.iter().map(|e| 1u128 << eidx[e]).fold(0, |x, y| x | y));
                }
            }
        }
    }
    let r1 = bit_rank(edges.iter().map(|&(a, b)| 1u128 << a | 1u128 << b).collect());
    let r2 = bit_rank(triangle_rows);
    (n - r1, edges.len() - r1 - r2)
}

/// Same count for an abstract graph given by explicit edges.
fn graph_betti(nverts: usize, edges: &[(usize, usize)]) -> (usize, usize) {
    let r1 = bit_rank(edges.iter().map(|&(a, b)| 1u128 << a | 1u128 << b).collect());
    (nverts - r1, edges.len() - r1)
}

fn euclid_metric(points: &[(f64, f64)], labels: Option<Vec<String>>) -> MetricData {
    let n = points.len();
    let mut rows = vec![vec![rat_int(0); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = points[i].0 - points[j].0;
            let dy = points[i].1 - points[j].1;
            let d = rat_from_f64((dx * dx + dy * dy).sqrt()).unwrap();
            rows[i][j] = d.clone();
            rows[j][i] = d;
        }
    }
    MetricData::new(rows, labels, None).unwrap()
}

fn subset_h1(fam: &PosetFamily, name: &str) -> PersistenceDiagram {
    let sc = fam.subsets().iter().find(|s| s.name == name).unwrap();
    reduce_to_intervals(&sc.complex, 1, FieldSpec::Gf(2)).diagram()
}

fn part_is_empty(cd: &ColoredDiagram, id: &str) -> bool {
    cd.part(id).map_or(true, |p| p.diagram.is_empty())
}

#[test]
fn criterion_09_the_two_layouts_reproduce() {
    let o = |s: &str| Some(s.to_string());
    let sq2 = rat_from_f64(2f64.sqrt()).unwrap();
    let square_cycle = PersistenceDiagram::new(vec![Cornerpoint {
        birth: ExtValue::int(1),
        death: ExtValue::Finite(sq2.clone()),
        color: None,
        multiplicity: 1,
    }])
    .unwrap();
    let labels = vec!["o".into(), "o".into(), "o".into(), "o".into(), "b".into()];
    let corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    let probe = rat_frac(6, 5); // between the square's side and its diagonal

    // First layout: the second class sits far away, so the square's cycle
    // survives unchanged into the union of the two classes.
    let mut pts_far = corners.to_vec();
    pts_far.push((10.0, 0.5));
    let m_far = euclid_metric(&pts_far, Some(labels.clone()));
    let fam_far = build_poset_family(&m_far, 2, &rat_int(3)).unwrap();
    assert_eq!(subset_h1(&fam_far, "o"), square_cycle);
    assert!(subset_h1(&fam_far, "b").is_empty());
    assert_eq!(subset_h1(&fam_far, "b+o"), square_cycle, "the cycle must survive into the union");
    assert_eq!(gf2_betti_at_scale(&m_far, &[0, 1, 2, 3], &probe), (1, 1));
    assert_eq!(gf2_betti_at_scale(&m_far, &[4], &probe), (1, 0));
    assert_eq!(gf2_betti_at_scale(&m_far, &[0, 1, 2, 3, 4], &probe), (2, 1));

    // Second layout: the second class puts one point at the square's center,
    // and the spoke triangles fill the cycle the moment it would be born.
    let mut pts_center = corners.to_vec();
    pts_center.push((0.5, 0.5));
    let m_center = euclid_metric(&pts_center, Some(labels.clone()));
    let fam_center = build_poset_family(&m_center, 2, &rat_int(3)).unwrap();
    assert_eq!(subset_h1(&fam_center, "o"), square_cycle);
    assert!(subset_h1(&fam_center, "b").is_empty());
    assert!(
        subset_h1(&fam_center, "b+o").is_empty(),
        "the center point must fill the cycle at birth"
    );
    assert_eq!(gf2_betti_at_scale(&m_center, &[0, 1, 2, 3, 4], &probe), (1, 0));

    // Cross-check the library's degree-1 counts against the bit elimination
    // at the same probe, on the union complexes of both layouts.
    for (fam, m, expect) in
        [(&fam_far, &m_far, 1i64), (&fam_center, &m_center, 0i64)]
    {
        let sc = fam.subset(fam.full_mask()).unwrap();
        let f = homology_persistence_function(&sc.complex, 1, FieldSpec::Gf(2));
        assert_eq!(f.evaluate(&probe, &probe), expect);
        assert_eq!(gf2_betti_at_scale(m, &[0, 1, 2, 3, 4], &probe).1 as i64, expect);
    }

    // Colored output: in both layouts the new-cycle count assigns the square
    // to the first class and nothing to the union, so the two merged colored
    // diagrams coincide even though the per-subset pictures differ.
    let expected_colored = PersistenceDiagram::new(vec![Cornerpoint {
        birth: ExtValue::int(1),
        death: ExtValue::Finite(sq2.clone()),
        color: o("o"),
        multiplicity: 1,
    }])
    .unwrap();
    for fam in [&fam_far, &fam_center] {
        let cd = poset_colored_diagram(fam, 1, FieldSpec::Gf(2)).unwrap();
        assert_eq!(cd.part("o").unwrap().diagram, expected_colored);
        assert!(part_is_empty(&cd, "b"));
        assert!(part_is_empty(&cd, "b+o"));
        assert_eq!(cd.merged(), expected_colored);
        let parts: Vec<PersistenceFunction> = poset_color_functions(fam, 1, FieldSpec::Gf(2))
            .unwrap()
            .into_iter()
            .map(|(_, f)| f)
            .collect();
        assert!(colored_rank_check(&cd, &sum_of_functions(&parts)));
    }

    // The same two layouts through the binary, label column and all.
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_catpersist");
    for (name, fifth) in [("far", "10,0.5,b"), ("center", "0.5,0.5,b")] {
        let csv = format!(
            "x,y,label\n0,0,o\n1,0,o\n1,1,o\n0,1,o\n{fifth}\n"
        );
        let input = dir.path().join(format!("{name}.csv"));
        let output = dir.path().join(format!("{name}.json"));
        fs::write(&input, csv).unwrap();
        let status = Command::new(bin)
            .args(["colored", "--mode", "poset", "--degree", "1", "--max-dim", "2"])
            .args(["--max-scale", "3", "-o"])
            .arg(&output)
            .arg(&input)
            .env_remove("CATPERSIST_FIELD")
            .output()
            .unwrap();
        assert!(
            status.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&status.stderr)
        );
        let v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "schema": 1,
                "field": 2,
                "degree": 1,
                "points": [
                    {"birth": 1.0, "death": 1.4142135623730951, "multiplicity": 1, "color": "o"}
                ]
            }),
            "{name}: unexpected colored output"
        );
    }

    // Symmetric layout: two swapped circles appearing at 1, one fixed circle
    // at 2, under the order-two action that exchanges the pair.
    let mut cells: Vec<(Simplex, Rat)> =
        (0..9).map(|v| (Simplex::from_slice(&[v]), rat_int(0))).collect();
    for (a, b, t) in [
        (0, 1, 1),
        (1, 2, 1),
        (0, 2, 1),
        (3, 4, 1),
        (4, 5, 1),
        (3, 5, 1),
        (6, 7, 2),
        (7, 8, 2),
        (6, 8, 2),
    ] {
        cells.push((Simplex::from_slice(&[a, b]), rat_int(t)));
    }
    let c = FilteredComplex::new(cells).unwrap();
    let swap = vec![3usize, 4, 5, 0, 1, 2, 6, 7, 8];
    let action = GroupAction::new(vec![(0..9).collect(), swap]).unwrap();
    assert!(action.preserves_filtration(&c));
    let table = z2_swap_table();

    let pt = |b: i64, death: ExtValue, color: &str, mult: u64| Cornerpoint {
        birth: ExtValue::int(b),
        death,
        color: Some(color.into()),
        multiplicity: mult,
    };

    // Degree 1: the sum of the two swapped cycles is symmetric, their
    // difference changes sign, and the fixed circle is purely symmetric.
    let cd1 = group_colored_diagram(&c, &action, &table, 1).unwrap();
    assert_eq!(
        cd1.part("triv").unwrap().diagram,
        PersistenceDiagram::new(vec![
            pt(1, ExtValue::PosInf, "triv", 1),
            pt(2, ExtValue::PosInf, "triv", 1),
        ])
        .unwrap()
    );
    assert_eq!(
        cd1.part("sgn").unwrap().diagram,
        PersistenceDiagram::new(vec![pt(1, ExtValue::PosInf, "sgn", 1)]).unwrap()
    );

    // Degree 0: nine vertices split as six orbit sums and three orbit
    // differences; the circles never merge with each other, so two symmetric
    // components and one antisymmetric difference survive forever.
    let cd0 = group_colored_diagram(&c, &action, &table, 0).unwrap();
    assert_eq!(
        cd0.part("triv").unwrap().diagram,
        PersistenceDiagram::new(vec![
            pt(0, ExtValue::int(1), "triv", 2),
            pt(0, ExtValue::int(2), "triv", 2),
            pt(0, ExtValue::PosInf, "triv", 2),
        ])
        .unwrap()
    );
    assert_eq!(
        cd0.part("sgn").unwrap().diagram,
        PersistenceDiagram::new(vec![
            pt(0, ExtValue::int(1), "sgn", 2),
            pt(0, ExtValue::PosInf, "sgn", 1),
        ])
        .unwrap()
    );

    // Independent check: Euler-style counts on the explicit edge lists, and
    // the weighted colored counts against plain homology over the rationals.
    let edges_at = |t: i64| -> Vec<(usize, usize)> {
        let mut e = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        if t >= 2 {
            e.extend([(6, 7), (7, 8), (6, 8)]);
        }
        if t < 1 {
            e.clear();
        }
        e
    };
    let pi0 = component_persistence_function(&c);
    for (t, k) in [(0i64, 0usize), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)] {
        let probe = rat_frac(2 * t + 1, 2); // halfway past t
        let (b0, b1) = graph_betti(9, &edges_at(t));
        let expect = if k == 0 { b0 } else { b1 } as i64;
        let h = homology_persistence_function(&c, k, FieldSpec::Rational);
        assert_eq!(h.evaluate(&probe, &probe), expect, "degree {k} at {probe}");
        if k == 0 {
            assert_eq!(pi0.evaluate(&probe, &probe), expect);
        }
        let weighted: i64 = group_color_functions(&c, &action, &table, k)
            .unwrap()
            .iter()
            .map(|(_, w, f)| *w as i64 * f.evaluate(&probe, &probe))
            .sum();
        assert_eq!(weighted, expect, "degree {k} at {probe}");
    }
    for (k, cd) in [(0, &cd0), (1, &cd1)] {
        let plain = homology_persistence_function(&c, k, FieldSpec::Rational);
        assert!(colored_rank_check(cd, &plain), "degree {k}");
    }

    println!("criterion 09 (both illustrated layouts, library and binary): PASS");
}

// ---------------------------------------------------------------------------
// 10. The distance matrix is byte-identical no matter how many workers
//     compute it, and its entries match single pairwise runs.

#[test]
fn criterion_10_distance_matrix_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    let bin = env!("CARGO_BIN_EXE_catpersist");

    let datasets: [(&str, &str); 6] = [
        ("square", "x,y\n0,0\n1,0\n1,1\n0,1\n"),
        ("pentagon", "x,y\n1,0\n0.309017,0.951057\n-0.809017,0.587785\n-0.809017,-0.587785\n0.309017,-0.951057\n"),
        ("triangle", "x,y\n0,0\n2,0\n1,1.7320508\n"),
        ("clusters", "x,y\n0,0\n0.5,0\n0,0.5\n5,5\n5.5,5\n5,5.5\n"),
        ("hexagon", "x,y\n1,0\n0.5,0.866025\n-0.5,0.866025\n-1,0\n-0.5,-0.866025\n0.5,-0.866025\n"),
        ("scatter", "x,y\n0,0\n1.3,0.2\n2.1,1.1\n0.7,1.9\n-0.4,1.2\n1.1,0.8\n2.4,-0.3\n"),
    ];
    for (name, csv) in datasets {
        let input = dir.path().join(format!("{name}.csv"));
        fs::write(&input, csv).unwrap();
        let out = Command::new(bin)
            .args(["diagram", "--degree", "1", "--max-dim", "2", "-o"])
            .arg(corpus.join(format!("{name}.json")))
            .arg(&input)
            .env_remove("CATPERSIST_FIELD")
            .output()
            .unwrap();
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }

    let run_matrix = |jobs: &str| {
        let out = Command::new(bin)
            .args(["distance-matrix", "--jobs", jobs])
            .arg(&corpus)
            .env_remove("CATPERSIST_FIELD")
            .output()
            .unwrap();
        assert!(out.status.success(), "jobs {jobs}: {}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let serial = run_matrix("1");
    let parallel = run_matrix("8");
    assert_eq!(serial, parallel, "matrix bytes must not depend on the worker count");

    // Parse the matrix and compare one entry against a direct pairwise run.
    let text = String::from_utf8(serial).unwrap();
    let grid: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    let header = &grid[0];
    assert_eq!(header[0], "name");
    let mut sorted_names: Vec<&str> = header[1..].to_vec();
    sorted_names.sort_unstable();
    assert_eq!(&header[1..], &sorted_names[..], "columns must be sorted");
    let n = header.len() - 1;
    assert_eq!(grid.len(), n + 1);
    for i in 0..n {
        assert_eq!(grid[i + 1][0], header[i + 1], "rows and columns must agree");
        assert_eq!(grid[i + 1][i + 1], "0", "diagonal must be zero");
        for j in 0..n {
            assert_eq!(grid[i + 1][j + 1], grid[j + 1][i + 1], "matrix must be symmetric");
        }
    }
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let pairwise = Command::new(bin)
        .args(["bottleneck"])
        .arg(corpus.join("pentagon.json"))
        .arg(corpus.join("square.json"))
        .env_remove("CATPERSIST_FIELD")
        .output()
        .unwrap();
    assert!(pairwise.status.success());
    let value_line = String::from_utf8(pairwise.stdout).unwrap();
    assert_eq!(
        grid[col("pentagon.json")][col("square.json")],
        value_line.trim_end(),
        "matrix entry must match the pairwise run"
    );

    println!("criterion 10 (deterministic distance matrix, 6-dataset corpus): PASS");
}
