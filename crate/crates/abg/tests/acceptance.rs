//! End-to-end acceptance run: nine headline requirements, one test and one
//! printed pass/fail line each (run with `--nocapture` to see them all).
//! Budgets are asserted, so a pathologically slow environment fails loudly
//! rather than silently degrading.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use abg::algebra::{
    assemble_boundary, boundary_maps_from_complex, cohomology_class_is_nonzero, cup_product,
    fundamental_class_z, gf2_kernel_basis, homology, homology_summary, integer_kernel_basis,
    orientation, pair_with_class, smith_normal_form, snf::dense_smith, verify_cocycle, Cochain,
    Ring, SparseMat,
};
use abg::complex::{
    make_complex, verify_closed_pseudomanifold, SimplicialComplex, Validation,
};
use abg::geometry::simplex_volume;
use abg::lattice::{
    cell_count_closed_forms, cubical_cell_count, euler_from_cell_counts, kuhn_triangulation,
    mixing_translation, mod2_segment_intersection, subdivide_quotient, triangulate_quotient,
    ConstructionParams, GroupKind,
};
use abg::neighborhood::{build_neighborhoods, direct_hypersurface, extract_hypersurface};
use abg::pipeline::{run_pipeline, RunConfig};
use abg::rat::{Rat, RatVec};
use abg::report::CheckStatus;

fn criterion(n: usize, name: &str, budget: Option<Duration>, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let in_budget = budget.map_or(true, |b| elapsed <= b);
    let ok = outcome.is_ok() && in_budget;
    println!(
        "acceptance criterion {n} ({name}): {} [{elapsed:.2?}]",
        if ok { "pass" } else { "FAIL" }
    );
    if let Err(cause) = outcome {
        resume_unwind(cause);
    }
    if let Some(b) = budget {
        assert!(in_budget, "{name} took {elapsed:?}, budget {b:?}");
    }
}

fn params(k: u32, l: u32, group: GroupKind) -> ConstructionParams {
    ConstructionParams::new(k, l, group).unwrap()
}

// -------------------------------------------------------------------------
// 1. Cube triangulation: counts, tiling, face restriction, symmetry.

fn corner_flip(c: Rat) -> Rat {
    if c == Rat::ZERO {
        Rat::ONE
    } else {
        Rat::ZERO
    }
}

fn top_point_tuples(c: &SimplicialComplex) -> BTreeSet<Vec<RatVec>> {
    c.tops()
        .iter()
        .map(|t| {
            let mut pts = c.simplex_points(t);
            pts.sort();
            pts
        })
        .collect()
}

/// Faces of the unit m-cube: each coordinate free (None) or pinned to 0/1.
fn face_assignments(m: usize) -> Vec<Vec<Option<Rat>>> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(m as u32) {
        let mut c = code;
        let a: Vec<Option<Rat>> = (0..m)
            .map(|_| {
                let digit = c % 3;
                c /= 3;
                match digit {
                    0 => None,
                    1 => Some(Rat::ZERO),
                    _ => Some(Rat::ONE),
                }
            })
            .collect();
        if a.iter().any(|x| x.is_some()) {
            out.push(a);
        }
    }
    out
}

fn restriction_equals_embedded_triangulation(m: usize, assignment: &[Option<Rat>]) {
    let c = kuhn_triangulation(m).unwrap();
    let free: Vec<usize> = (0..m).filter(|&i| assignment[i].is_none()).collect();
    let in_face = |p: &RatVec| {
        (0..m).all(|i| match assignment[i] {
            None => true,
            Some(v) => p.0[i] == v,
        })
    };

    // What each top simplex leaves inside the face.
    let mut restricted: BTreeSet<Vec<RatVec>> = BTreeSet::new();
    for t in c.tops() {
        let part: Vec<RatVec> = c
            .simplex_points(t)
            .into_iter()
            .filter(|p| in_face(p))
            .collect();
        if !part.is_empty() {
            restricted.insert(part);
        }
    }

    // The face's own triangulation, pushed through the face chart.
    let embed = |q: &RatVec| {
        let mut p = RatVec::zeros(m);
        for (i, slot) in assignment.iter().enumerate() {
            if let Some(v) = slot {
                p.0[i] = *v;
            }
        }
        for (pos, &axis) in free.iter().enumerate() {
            p.0[axis] = q.0[pos];
        }
        p
    };
    let expected: BTreeSet<Vec<RatVec>> = if free.is_empty() {
        let corner: Vec<Rat> = assignment.iter().map(|s| s.unwrap()).collect();
        BTreeSet::from([vec![RatVec(corner)]])
    } else {
        let sub = kuhn_triangulation(free.len()).unwrap();
        sub.tops()
            .iter()
            .map(|t| {
                let mut pts: Vec<RatVec> =
                    sub.simplex_points(t).iter().map(&embed).collect();
                pts.sort();
                pts
            })
            .collect()
    };

    // Every expected face simplex occurs, and everything the restriction
    // produces is a face of one of them: equal subcomplexes.
    for e in &expected {
        assert!(restricted.contains(e), "missing face simplex in dim {m}");
    }
    for r in &restricted {
        assert!(
            expected
                .iter()
                .any(|e| r.iter().all(|p| e.contains(p))),
            "restriction has a simplex outside the face triangulation"
        );
    }
}

#[test]
fn criterion_1_kuhn_triangulations() {
    criterion(1, "cube triangulation counts and invariants", Some(Duration::from_secs(5)), || {
        for m in 1..=6usize {
            let c = kuhn_triangulation(m).unwrap();
            assert_eq!(c.tops().len(), (1..=m).product::<usize>(), "top count at m={m}");
            assert_eq!(c.num_vertices(), 1 << m);
            let volume = c
                .tops()
                .iter()
                .map(|t| simplex_volume(&c.simplex_points(t)))
                .fold(Rat::ZERO, |a, b| a + b);
            assert_eq!(volume, Rat::ONE, "tiling volume at m={m}");
        }

        for m in 1..=5usize {
            for assignment in face_assignments(m) {
                restriction_equals_embedded_triangulation(m, &assignment);
            }

            // Isometries fixing the main diagonal corner pair: coordinate
            // permutations, optionally composed with the antipodal swap.
            let c = kuhn_triangulation(m).unwrap();
            let tuples = top_point_tuples(&c);
            for perm in (0..m).permutations(m) {
                for antipodal in [false, true] {
                    for tuple in &tuples {
                        let mut image: Vec<RatVec> = tuple
                            .iter()
                            .map(|p| {
                                RatVec(
                                    (0..m)
                                        .map(|i| {
                                            let v = p.0[perm[i]];
                                            if antipodal {
                                                corner_flip(v)
                                            } else {
                                                v
                                            }
                                        })
                                        .collect(),
                                )
                            })
                            .collect();
                        image.sort();
                        assert!(
                            tuples.contains(&image),
                            "symmetry fails at m={m}, perm={perm:?}, antipodal={antipodal}"
                        );
                    }
                }
            }
        }
    });
}

// -------------------------------------------------------------------------
// 2. Quotient builds at k=1, L=1.

#[test]
fn criterion_2_quotient_builds() {
    criterion(2, "quotient builds at k=1, L=1", Some(Duration::from_secs(5)), || {
        let qhat = triangulate_quotient(params(1, 1, GroupKind::Ghat)).unwrap();
        let f = qhat.f_vector();
        assert_eq!(f[0], 24, "vertex orbits");
        assert_eq!(f[3], 144, "top orbits");
        assert_eq!(qhat.euler_characteristic(), 0);

        // Betti numbers through the subdivision, which is honestly
        // simplicial; subdivision preserves homology.
        let sub = subdivide_quotient(&qhat, false).unwrap();
        let h = homology_summary(&sub.complex).unwrap();
        let betti: Vec<usize> = h.iter().map(|d| d.betti).collect();
        assert_eq!(betti, vec![1, 3, 3, 1]);
        assert!(h.iter().all(|d| d.torsion.is_empty()));

        let qg = triangulate_quotient(params(1, 1, GroupKind::G)).unwrap();
        let f = qg.f_vector();
        assert_eq!(f[0], 12, "vertex orbits");
        assert_eq!(f[3], 72, "top orbits");
        assert_eq!(qg.euler_characteristic(), 0);
    });
}

// -------------------------------------------------------------------------
// 3. Neighborhood structure checks on every in-budget parameter pair.

fn structure_checks() -> Vec<String> {
    ["build", "fullness", "dual-split", "boundary-eq", "x-direct-eq"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn run_structure_instance(k: u32, l: u32, group: GroupKind, budget: Duration) {
    let start = Instant::now();
    let cfg = RunConfig {
        params: params(k, l, group),
        checks: structure_checks(),
        out_dir: None,
        emit_neighborhoods: false,
    };
    let (report, _) = run_pipeline(&cfg).unwrap();
    assert_eq!(report.checks.len(), 5);
    for c in &report.checks {
        assert_eq!(
            c.status,
            CheckStatus::Pass,
            "check {} failed at k={k}, L={l}, group {group}: {}",
            c.name,
            c.details
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "k={k}, L={l}, {group} took {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn criterion_3_neighborhood_suite() {
    criterion(3, "neighborhood suite", None, || {
        let half_minute = Duration::from_secs(30);
        let quarter_hour = Duration::from_secs(900);
        for group in [GroupKind::Ghat, GroupKind::G] {
            run_structure_instance(1, 1, group, half_minute);
            run_structure_instance(1, 2, group, half_minute);
        }
        for group in [GroupKind::Ghat, GroupKind::G] {
            run_structure_instance(2, 1, group, quarter_hour);
        }
    });
}

// -------------------------------------------------------------------------
// 4. The surface instance and its orientation double cover.

#[test]
fn criterion_4_surface_instance() {
    criterion(4, "surface instance k=1, L=1", Some(Duration::from_secs(60)), || {
        let cfg = RunConfig {
            params: params(1, 1, GroupKind::G),
            checks: ["build", "pseudomanifold", "orientation", "double-cover-iso", "euler"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            out_dir: None,
            emit_neighborhoods: false,
        };
        let (report, built) = run_pipeline(&cfg).unwrap();
        for c in &report.checks {
            assert_eq!(c.status, CheckStatus::Pass, "{}: {}", c.name, c.details);
        }

        let x = &built.x.complex;
        let pm = verify_closed_pseudomanifold(x, 2).unwrap();
        assert!(pm.is_closed_pseudomanifold());
        assert_eq!(pm.vertex_components, 1, "connected");
        assert!(!orientation(x).unwrap().orientable);
        assert_eq!(x.euler_characteristic(), -6);
        let h = homology_summary(x).unwrap();
        assert_eq!(h[0].betti, 1);
        assert!(h[0].torsion.is_empty());
        assert_eq!(h[1].betti, 7);
        assert_eq!(h[1].torsion, vec![BigInt::from(2)]);
        assert_eq!(h[2].betti, 0);
        assert!(h[2].torsion.is_empty());

        let xhat = &built.hat.as_ref().expect("companion cover built").x.complex;
        let pm = verify_closed_pseudomanifold(xhat, 2).unwrap();
        assert!(pm.is_closed_pseudomanifold());
        assert_eq!(pm.vertex_components, 1, "cover connected");
        assert!(orientation(xhat).unwrap().orientable);
        assert_eq!(xhat.euler_characteristic(), -12);
        let h = homology_summary(xhat).unwrap();
        assert_eq!(h[1].betti, 14);
        assert!(h[1].torsion.is_empty());
        assert_eq!(h[2].betti, 1);

        // The isomorphism between the abstract orientation cover and the
        // companion-built cover is the double-cover-iso verdict above.
    });
}

// -------------------------------------------------------------------------
// 5. Cell-count oracle against both closed forms.

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[test]
fn criterion_5_cell_count_oracle() {
    criterion(5, "cell-count oracle", Some(Duration::from_secs(60)), || {
        for (k, l) in [(1u32, 1u32), (1, 2), (1, 3), (2, 1)] {
            let p = params(k, l, GroupKind::Ghat);
            let scale = (l as u64).pow(2 * k) * (2 * l as u64 + 1);
            let variant_scale = (l as u64).pow(2 * k) * (l as u64 + 1);
            for i in 0..=p.skeleton_dim() {
                let counted = cubical_cell_count(p, i).unwrap();
                let choose = binomial(2 * k as u64 + 1, i as u64);
                assert_eq!(counted, scale * choose, "count at k={k}, L={l}, dim {i}");
                let (ours, published) = cell_count_closed_forms(p, i);
                assert_eq!(counted, ours);
                assert_eq!(published, variant_scale * choose);
                assert_ne!(counted, published, "the published variant never agrees");
            }
        }

        // Simplex counts downstream agree with the oracle: the cover
        // hypersurface doubles the skeleton quotient's Euler number.
        let p = params(1, 1, GroupKind::Ghat);
        let q = triangulate_quotient(p).unwrap();
        let pair = build_neighborhoods(&q, false).unwrap();
        let xhat = extract_hypersurface(&pair).unwrap();
        assert_eq!(
            xhat.complex.euler_characteristic(),
            2 * euler_from_cell_counts(p).unwrap()
        );
    });
}

// -------------------------------------------------------------------------
// 6. Mod-2 crossing parities of lattice loops.

#[test]
fn criterion_6_mod2_degree_witness() {
    criterion(6, "mod-2 degree witness", Some(Duration::from_secs(10)), || {
        for l in [1u32, 2] {
            let p = params(1, l, GroupKind::G);
            let q = triangulate_quotient(p).unwrap();
            let sub = subdivide_quotient(&q, true).unwrap();
            let x = direct_hypersurface(&sub).unwrap();

            let n = p.ambient_dim();
            let start = RatVec((0..n).map(|i| Rat::new(1, 64i128 << i)).collect());
            let mix_end = start.add(&mixing_translation(p));
            let parity =
                mod2_segment_intersection(&x.complex, x.lifts.as_ref(), &start, &mix_end)
                    .unwrap();
            assert_eq!(parity, 1, "mixing loop at L={l}");

            let mut axis_step = RatVec::zeros(n);
            axis_step.0[0] = Rat::from_int(l as i128);
            let axis_end = start.add(&axis_step);
            let parity =
                mod2_segment_intersection(&x.complex, x.lifts.as_ref(), &start, &axis_end)
                    .unwrap();
            assert_eq!(parity, 0, "axis loop at L={l}");
        }
    });
}

// -------------------------------------------------------------------------
// 7. Cocycle classes and the cup-product engine.

/// The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
fn seven_vertex_torus() -> SimplicialComplex {
    let points: Vec<RatVec> = (0..7)
        .map(|i| {
            let mut v = vec![0i128; 7];
            v[i] = 1;
            RatVec::from_ints(&v)
        })
        .collect();
    let mut tris = Vec::new();
    for i in 0..7u32 {
        tris.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        tris.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    make_complex(points, tris, Validation::Structural).unwrap()
}

/// The 6-vertex projective plane.
fn six_vertex_projective_plane() -> SimplicialComplex {
    let points: Vec<RatVec> = (0..6)
        .map(|i| {
            let mut v = vec![0i128; 6];
            v[i] = 1;
            RatVec::from_ints(&v)
        })
        .collect();
    let tris = vec![
        vec![0, 1, 3],
        vec![0, 1, 4],
        vec![0, 2, 3],
        vec![0, 2, 5],
        vec![0, 4, 5],
        vec![1, 2, 4],
        vec![1, 2, 5],
        vec![1, 3, 5],
        vec![2, 3, 4],
        vec![3, 4, 5],
    ];
    make_complex(points, tris, Validation::Structural).unwrap()
}

fn bigint_to_i64(b: &BigInt) -> i64 {
    b.to_i64().expect("small cocycle values")
}

#[test]
fn criterion_7_cohomology_instances() {
    criterion(7, "cocycle classes and cup products", Some(Duration::from_secs(30)), || {
        // Coordinate classes stay nonzero, upstairs and down.
        for l in [1u32, 2] {
            let cfg = RunConfig {
                params: params(1, l, GroupKind::G),
                checks: vec!["build".into(), "cocycle-h1".into()],
                out_dir: None,
                emit_neighborhoods: false,
            };
            let (report, _) = run_pipeline(&cfg).unwrap();
            let c = report
                .checks
                .iter()
                .find(|c| c.name == "cocycle-h1")
                .unwrap();
            assert_eq!(c.status, CheckStatus::Pass, "L={l}: {}", c.details);
            assert_eq!(c.details["classes_nonzero"], serde_json::json!([true, true]));
            assert_eq!(
                c.details["pullback_classes_nonzero"],
                serde_json::json!([true, true])
            );
        }

        // Torus: the cup pairing on a 1-cocycle lattice basis is unimodular
        // of rank two, and some basis pair evaluates to exactly +/-1.
        let t = seven_vertex_torus();
        assert_eq!(t.f_vector(), vec![7, 21, 14]);
        assert_eq!(t.euler_characteristic(), 0);
        let table = t.face_table();
        let class: Vec<i64> = fundamental_class_z(&t)
            .unwrap()
            .expect("torus is orientable")
            .iter()
            .map(|&s| s as i64)
            .collect();
        let delta = assemble_boundary(&table[1], &table[2]).transpose();
        let basis: Vec<Cochain> = integer_kernel_basis(&delta)
            .iter()
            .map(|v| Cochain::new(1, Ring::Z, v.iter().map(bigint_to_i64).collect()))
            .inspect(|c| verify_cocycle(&table, c).unwrap())
            .collect();
        assert_eq!(basis.len(), 8);
        let pairing: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let cup = cup_product(&table, a, b).unwrap();
                        BigInt::from(pair_with_class(&cup, &class).unwrap())
                    })
                    .collect()
            })
            .collect();
        let found_unit = pairing
            .iter()
            .any(|row| row.iter().any(|v| v.abs() == BigInt::from(1)));
        assert!(found_unit, "some alpha cup beta evaluates to +/-1");
        assert_eq!(
            dense_smith(pairing),
            vec![BigInt::from(1), BigInt::from(1)],
            "intersection form of the torus"
        );

        // Projective plane: the nonzero mod-2 class has nonzero cup square.
        let rp = six_vertex_projective_plane();
        assert_eq!(rp.euler_characteristic(), 1);
        let table = rp.face_table();
        let delta = assemble_boundary(&table[1], &table[2]).transpose();
        let generator = gf2_kernel_basis(&delta)
            .into_iter()
            .map(|bits| Cochain::new(1, Ring::Z2, bits.iter().map(|&b| b as i64).collect()))
            .inspect(|c| verify_cocycle(&table, c).unwrap())
            .find(|c| cohomology_class_is_nonzero(&table, c).unwrap())
            .expect("nonzero mod-2 class exists");
        let square = cup_product(&table, &generator, &generator).unwrap();
        assert_eq!(
            pair_with_class(&square, &vec![1; table[2].len()]).unwrap(),
            1,
            "a cup a is nonzero"
        );
    });
}

// -------------------------------------------------------------------------
// 8. Algebra engine properties.

/// Plain full-pivot Smith reduction, written independently of the library
/// implementation: repeatedly move a minimal-magnitude entry to the pivot,
/// reduce its row, column, and any non-divisible remainder, and advance.
fn oracle_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot
                        .map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = &a[i][t] / &a[t][t];
                for j in t..cols {
                    let s = &a[t][j] * &q;
                    a[i][j] -= s;
                }
                clean &= a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = &a[t][j] / &a[t][t];
                for i in t..rows {
                    let s = &a[i][t] * &q;
                    a[i][j] -= s;
                }
                clean &= a[t][j].is_zero();
            }
        }
        if !clean {
            continue;
        }
        let stubborn_row = (t + 1..rows)
            .cartesian_product(t + 1..cols)
            .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero())
            .map(|(i, _)| i);
        if let Some(i) = stubborn_row {
            for col in t..cols {
                let add = a[i][col].clone();
                a[t][col] += add;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

#[test]
fn criterion_8_algebra_properties() {
    criterion(8, "algebra engine properties", Some(Duration::from_secs(60)), || {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_ab9);
        for round in 0..100 {
            let rows = rng.gen_range(1..=8);
            let cols = rng.gen_range(1..=8);
            let dense: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            let columns: Vec<Vec<(u32, i64)>> = (0..cols)
                .map(|j| {
                    (0..rows)
                        .filter(|&i| dense[i][j] != 0)
                        .map(|i| (i as u32, dense[i][j]))
                        .collect()
                })
                .collect();
            let sparse = SparseMat::from_columns(rows, columns);
            let expected = oracle_smith(
                dense
                    .iter()
                    .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                    .collect(),
            );
            let got = smith_normal_form(&sparse);
            assert_eq!(got.invariant_factors, expected, "round {round}: {dense:?}");
            assert_eq!(got.rank, expected.len());
        }

        // Boundary-of-boundary, Euler vs Betti, and mod-2 duality on the
        // closed instances.
        let qg = triangulate_quotient(params(1, 1, GroupKind::G)).unwrap();
        let sub = subdivide_quotient(&qg, false).unwrap();
        let x = direct_hypersurface(&sub).unwrap();
        let qhat = triangulate_quotient(params(1, 1, GroupKind::Ghat)).unwrap();
        let pair = build_neighborhoods(&qhat, false).unwrap();
        let xhat = extract_hypersurface(&pair).unwrap();

        let named: Vec<(&str, &SimplicialComplex)> = vec![
            ("cube", &sub.complex),
            ("x", &x.complex),
            ("x-cover", &xhat.complex),
        ];
        let torus = seven_vertex_torus();
        let rp = six_vertex_projective_plane();
        let kuhn3 = kuhn_triangulation(3).unwrap();
        let small: Vec<(&str, &SimplicialComplex)> =
            vec![("torus", &torus), ("rp2", &rp), ("kuhn3", &kuhn3)];

        for &(name, c) in named.iter().chain(&small) {
            let maps = boundary_maps_from_complex(c);
            assert!(maps.is_chain_complex(), "boundary squared at {name}");
            let h = homology_summary(c).unwrap();
            let alternating: i64 = h
                .iter()
                .map(|d| {
                    let sign = if d.degree % 2 == 0 { 1 } else { -1 };
                    sign * d.betti as i64
                })
                .sum();
            assert_eq!(c.euler_characteristic(), alternating, "euler-poincare at {name}");
        }

        for (name, c) in [("x", &x.complex), ("x-cover", &xhat.complex)] {
            let maps = boundary_maps_from_complex(c);
            let b: Vec<usize> = (0..=2)
                .map(|d| homology(&maps, d, Ring::Z2).unwrap().betti)
                .collect();
            assert_eq!(b[0], b[2], "mod-2 duality ends at {name}");
            let expected_middle = if name == "x" { 8 } else { 14 };
            assert_eq!(b, vec![1, expected_middle, 1], "mod-2 betti at {name}");
        }
    });
}

// -------------------------------------------------------------------------
// 9. Determinism across thread counts.

#[test]
fn criterion_9_determinism() {
    criterion(9, "thread-count determinism", None, || {
        let bin = env!("CARGO_BIN_EXE_abg");
        let dir = tempfile::tempdir().unwrap();
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            let out = dir.path().join(format!("t{threads}"));
            let status = std::process::Command::new(bin)
                .args([
                    "build",
                    "--k",
                    "1",
                    "--L",
                    "1",
                    "--group",
                    "G",
                    "--out",
                    out.to_str().unwrap(),
                    "--emit-neighborhoods",
                ])
                .env("ABG_THREADS", threads)
                .status()
                .unwrap();
            assert!(status.success(), "build run with {threads} threads");
            outputs.push(out);
        }

        for name in ["x.scx", "x-hat.scx", "n-integral.scx", "n-shifted.scx"] {
            let a = std::fs::read(outputs[0].join(name)).unwrap();
            let b = std::fs::read(outputs[1].join(name)).unwrap();
            assert_eq!(a, b, "artifact {name} differs between thread counts");
        }

        let strip = |path: &std::path::Path| -> serde_json::Value {
            let text = std::fs::read_to_string(path.join("report.json")).unwrap();
            let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
            v.as_object_mut().unwrap().remove("timings_ms");
            v
        };
        assert_eq!(
            strip(&outputs[0]),
            strip(&outputs[1]),
            "reports differ beyond timings"
        );
    });
}
