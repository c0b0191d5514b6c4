//! End-to-end runs: build the quotient construction, run the requested
//! checks, and assemble a report.
//!
//! With the full lattice, skeleton neighborhoods do not descend (the mixing
//! translation swaps the two skeleta), so every neighborhood-level question
//! runs on the index-two companion quotient and the answers are carried
//! down the degree-two cover. The hypersurface itself is built natively in
//! both cases.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Value};

use crate::algebra::{
    cohomology_class_is_nonzero, covers_isomorphic_over_base, orientation,
    orientation_double_cover, pullback,
};
use crate::complex::{
    extract_subcomplex, verify_closed_pseudomanifold, vertex_link_report, VertexId,
};
use crate::error::{Error, Result};
use crate::lattice::{
    cell_count_closed_forms, cubical_cell_count, euler_from_cell_counts, mixing_translation,
    mod2_segment_intersection, subdivide_quotient, triangulate_quotient, verify_dual_split,
    verify_equivariance, verify_fullness, ConstructionParams, GroupKind, QuotientComplex,
    Skeleton, SubdividedQuotient,
};
use crate::neighborhood::{
    build_neighborhoods, coordinate_cocycle, descend_subdivision, direct_hypersurface,
    direct_hypersurface_members, extract_hypersurface, project_hypersurface, verify_coverage,
    verify_flag_split, verify_intersection_is_hypersurface, Hypersurface, NeighborhoodPair,
};
use crate::rat::{Rat, RatVec};
use crate::report::{sha256_hex, CheckOutcome, CheckStatus, Report, CHECK_NAMES};
use crate::scx::to_scx_string;

pub struct RunConfig {
    pub params: ConstructionParams,
    pub checks: Vec<String>,
    pub out_dir: Option<PathBuf>,
    /// Also write the companion hypersurface and both neighborhoods.
    pub emit_neighborhoods: bool,
}

impl RunConfig {
    pub fn new(params: ConstructionParams) -> RunConfig {
        RunConfig {
            params,
            checks: default_checks(params.k),
            out_dir: None,
            emit_neighborhoods: false,
        }
    }
}

/// At k = 1 everything runs; above, the checks that need full homology or
/// integer cohomology solves stay opt-in.
pub fn default_checks(k: u32) -> Vec<String> {
    let names: &[&str] = if k == 1 {
        CHECK_NAMES
    } else {
        &[
            "build",
            "fullness",
            "dual-split",
            "boundary-eq",
            "x-direct-eq",
            "pseudomanifold",
            "orientation",
            "euler",
        ]
    };
    names.iter().map(|s| s.to_string()).collect()
}

pub fn validate_checks(checks: &[String]) -> Result<()> {
    for c in checks {
        if !CHECK_NAMES.contains(&c.as_str()) {
            return Err(Error::ParamMismatch(format!(
                "unknown check '{}'; valid checks: {}",
                c,
                CHECK_NAMES.join(", ")
            )));
        }
    }
    Ok(())
}

/// Companion data built on the index-two lattice when the run itself uses
/// the full one.
pub struct HatBundle {
    pub quotient: QuotientComplex,
    pub pair: NeighborhoodPair,
    pub x: Hypersurface,
    /// Hypersurface-level projection: cover vertex/top to base vertex/top.
    pub projection: (Vec<VertexId>, Vec<u32>),
}

/// Everything a run constructs before checking.
pub struct Built {
    pub quotient: QuotientComplex,
    /// Native subdivision when the native group is the full lattice.
    pub sub_own: Option<SubdividedQuotient>,
    /// Native neighborhoods when the native group has integral generators.
    pub pair: Option<NeighborhoodPair>,
    pub x: Hypersurface,
    pub hat: Option<HatBundle>,
}

impl Built {
    pub fn native_sub(&self) -> &SubdividedQuotient {
        match &self.sub_own {
            Some(s) => s,
            None => &self.pair.as_ref().expect("one side is always built").sub,
        }
    }

    /// The quotient with integral generators: native or companion.
    pub fn hat_quotient(&self) -> Option<&QuotientComplex> {
        if self.quotient.params().group == GroupKind::Ghat {
            Some(&self.quotient)
        } else {
            self.hat.as_ref().map(|h| &h.quotient)
        }
    }

    pub fn hat_pair(&self) -> Option<&NeighborhoodPair> {
        self.pair
            .as_ref()
            .or_else(|| self.hat.as_ref().map(|h| &h.pair))
    }

    pub fn hat_x(&self) -> Option<&Hypersurface> {
        if self.quotient.params().group == GroupKind::Ghat {
            Some(&self.x)
        } else {
            self.hat.as_ref().map(|h| &h.x)
        }
    }
}

fn wants(checks: &[String], name: &str) -> bool {
    checks.iter().any(|c| c == name)
}

fn wants_lifts(checks: &[String]) -> bool {
    wants(checks, "cocycle-h1") || wants(checks, "mod2-degree")
}

const HAT_SIDE_CHECKS: &[&str] = &[
    "fullness",
    "dual-split",
    "boundary-eq",
    "x-direct-eq",
    "double-cover-iso",
    "cocycle-h1",
];

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn build_all(cfg: &RunConfig, timings: &mut BTreeMap<String, u64>) -> Result<Built> {
    let with_lifts = wants_lifts(&cfg.checks);
    let t0 = Instant::now();
    let quotient = triangulate_quotient(cfg.params)?;
    timings.insert("triangulate".into(), ms(t0));

    match cfg.params.group {
        GroupKind::Ghat => {
            let t = Instant::now();
            let pair = build_neighborhoods(&quotient, with_lifts)?;
            timings.insert("subdivide".into(), ms(t));
            let t = Instant::now();
            let x = extract_hypersurface(&pair)?;
            timings.insert("extract".into(), ms(t));
            Ok(Built {
                quotient,
                sub_own: None,
                pair: Some(pair),
                x,
                hat: None,
            })
        }
        GroupKind::G => {
            let t = Instant::now();
            let sub = subdivide_quotient(&quotient, with_lifts)?;
            timings.insert("subdivide".into(), ms(t));
            let t = Instant::now();
            let x = direct_hypersurface(&sub)?;
            timings.insert("extract".into(), ms(t));
            let needs_hat = cfg
                .checks
                .iter()
                .any(|c| HAT_SIDE_CHECKS.contains(&c.as_str()));
            let hat = if needs_hat {
                let t = Instant::now();
                let hq = triangulate_quotient(cfg.params.with_group(GroupKind::Ghat))?;
                let pair = build_neighborhoods(&hq, false)?;
                let hx = extract_hypersurface(&pair)?;
                let descent = descend_subdivision(&hq, &pair.sub, &sub)?;
                let projection = project_hypersurface(&descent, &hx, &x)?;
                timings.insert("companion".into(), ms(t));
                Some(HatBundle {
                    quotient: hq,
                    pair,
                    x: hx,
                    projection,
                })
            } else {
                None
            };
            Ok(Built {
                quotient,
                sub_own: Some(sub),
                pair: None,
                x,
                hat,
            })
        }
    }
}

pub fn run_pipeline(cfg: &RunConfig) -> Result<(Report, Built)> {
    validate_checks(&cfg.checks)?;
    let mut timings = BTreeMap::new();
    let built = build_all(cfg, &mut timings)?;

    let mut checks = Vec::new();
    for &name in CHECK_NAMES {
        if !wants(&cfg.checks, name) {
            continue;
        }
        let t = Instant::now();
        let (status, details) = run_check(name, cfg, &built)?;
        timings.insert(format!("check-{}", name), ms(t));
        checks.push(CheckOutcome {
            name: name.into(),
            status,
            details,
        });
    }

    let mut artifacts = BTreeMap::new();
    if let Some(dir) = &cfg.out_dir {
        let t = Instant::now();
        write_artifacts(cfg, &built, dir, &mut artifacts)?;
        timings.insert("artifacts".into(), ms(t));
    }

    let report = Report {
        version: env!("CARGO_PKG_VERSION").into(),
        k: cfg.params.k,
        l: cfg.params.l,
        group: cfg.params.group.to_string(),
        checks,
        artifacts,
        timings_ms: timings,
        input_match: None,
    };
    if let Some(dir) = &cfg.out_dir {
        std::fs::write(dir.join("report.json"), report.to_canonical_json())?;
    }
    Ok((report, built))
}

fn run_check(name: &str, cfg: &RunConfig, built: &Built) -> Result<(CheckStatus, Value)> {
    match name {
        "build" => check_build(built),
        "fullness" => check_fullness(built),
        "dual-split" => check_dual_split(built),
        "boundary-eq" => check_boundary_eq(built),
        "x-direct-eq" => check_x_direct_eq(built),
        "pseudomanifold" => check_pseudomanifold(cfg, built),
        "links" => check_links(cfg, built),
        "orientation" => check_orientation(cfg, built),
        "double-cover-iso" => check_double_cover(cfg, built),
        "euler" => check_euler(cfg, built),
        "cocycle-h1" => check_cocycle_h1(cfg, built),
        "mod2-degree" => check_mod2_degree(cfg, built),
        other => Err(Error::ParamMismatch(format!("unknown check '{}'", other))),
    }
}

fn verdict(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn hat_missing() -> Error {
    Error::ParamMismatch("companion quotient was not built for a check that needs it".into())
}

fn check_build(built: &Built) -> Result<(CheckStatus, Value)> {
    let q = &built.quotient;
    let p = q.params();
    let n = p.ambient_dim();
    let covol = q.basis.covolume();
    let cells = covol * Rat::from_int(1 << n);
    debug_assert!(cells.is_integral());
    let expected_vertices = cells.numer() as usize;
    let factorial: i128 = (1..=n as i128).product();
    let expected_tops = (cells * Rat::from_int(factorial)).numer() as usize;

    let counts_ok =
        q.vertices.len() == expected_vertices && q.tops.len() == expected_tops;
    let tiling_ok = q.total_volume() == covol;
    let faithful_ok = q.faithful == (p.l >= 2);
    let fv = q.f_vector();
    let chi: i64 = fv
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum();

    let ok = counts_ok && tiling_ok && faithful_ok && chi == 0;
    let details = json!({
        "vertices": q.vertices.len(),
        "tops": q.tops.len(),
        "f_vector": fv,
        "euler": chi,
        "covolume": covol.to_string(),
        "tiling_exact": tiling_ok,
        "vertex_faithful": q.faithful,
        "counts_match": counts_ok,
    });
    Ok((verdict(ok), details))
}

fn check_fullness(built: &Built) -> Result<(CheckStatus, Value)> {
    let hq = built.hat_quotient().ok_or_else(hat_missing)?;
    let integral = verify_fullness(hq, Skeleton::Integral)?;
    let shifted = verify_fullness(hq, Skeleton::Shifted)?;
    let details = json!({
        "integral_full": integral,
        "shifted_full": shifted,
        "evaluated_on": hq.params().group.to_string(),
    });
    Ok((verdict(integral && shifted), details))
}

fn check_dual_split(built: &Built) -> Result<(CheckStatus, Value)> {
    let native = verify_dual_split(&built.quotient);
    let pair = built.hat_pair().ok_or_else(hat_missing)?;
    let flag = verify_flag_split(&pair.sub)?;
    let hq = built.hat_quotient().ok_or_else(hat_missing)?;
    let equivariant = verify_equivariance(hq)?;
    let details = json!({
        "per_lift_split": native,
        "flag_split": flag,
        "mixing_equivariance": equivariant,
    });
    Ok((verdict(native && flag && equivariant), details))
}

fn check_boundary_eq(built: &Built) -> Result<(CheckStatus, Value)> {
    let pair = built.hat_pair().ok_or_else(hat_missing)?;
    let hx = built.hat_x().ok_or_else(hat_missing)?;
    let coverage = verify_coverage(pair);
    let report = verify_intersection_is_hypersurface(pair, hx)?;
    let details = json!({
        // Equality of the two boundaries is enforced during extraction.
        "boundaries_equal": true,
        "neighborhoods_cover": coverage,
        "intersection_is_hypersurface": report.matches,
        "integral_side_tops": pair.tops_on(Skeleton::Integral),
        "shifted_side_tops": pair.tops_on(Skeleton::Shifted),
        "hypersurface_f_vector": report.x_face_counts,
    });
    Ok((verdict(coverage && report.matches), details))
}

fn check_x_direct_eq(built: &Built) -> Result<(CheckStatus, Value)> {
    let pair = built.hat_pair().ok_or_else(hat_missing)?;
    let hx = built.hat_x().ok_or_else(hat_missing)?;
    let same = direct_hypersurface_members(&pair.sub) == hx.inclusion.tops();

    let mut descended_two_to_one = true;
    if let Some(h) = &built.hat {
        let (_, top_map) = &h.projection;
        let mut hits = vec![0u8; built.x.complex.tops().len()];
        for &t in top_map {
            hits[t as usize] += 1;
        }
        descended_two_to_one = hits.iter().all(|&c| c == 2);
    }
    let details = json!({
        "direct_equals_boundary": same,
        "descends_two_to_one": descended_two_to_one,
        "tops": hx.complex.tops().len(),
    });
    Ok((verdict(same && descended_two_to_one), details))
}

fn check_pseudomanifold(cfg: &RunConfig, built: &Built) -> Result<(CheckStatus, Value)> {
    let d = 2 * cfg.params.k as usize;
    let report = verify_closed_pseudomanifold(&built.x.complex, d)?;
    let details = json!({
        "dimension": d,
        "tops": built.x.complex.tops().len(),
        "bad_ridges": report.bad_ridge_count,
        "strongly_connected_components": report.strong_components,
        "vertex_components": report.vertex_components,
    });
    Ok((verdict(report.is_closed_pseudomanifold()), details))
}

fn check_links(cfg: &RunConfig, built: &Built) -> Result<(CheckStatus, Value)> {
    let nv = built.x.complex.num_vertices();
    let cap = if cfg.params.k == 1 { nv } else { nv.min(64) };
    let sample: Vec<VertexId> = (0..cap as VertexId).collect();
    let reports = vertex_link_report(&built.x.complex, &sample)?;
    let all_spheres = reports.iter().all(|r| r.is_homology_sphere);
    let details = json!({
        "vertices_checked": cap,
        "vertices_total": nv,
        "all_links_homology_spheres": all_spheres,
    });
    Ok((verdict(all_spheres), details))
}

fn check_orientation(cfg: &RunConfig, built: &Built) -> Result<(CheckStatus, Value)> {
    let data = orientation(&built.x.complex)?;
    let expected = cfg.params.group == GroupKind::Ghat;
    let clashes = data.defects.iter().filter(|&&(_, _, s)| s < 0).count();
    let details = json!({
        "orientable": data.orientable,
        "expected_orientable": expected,
        "clashing_adjacencies": clashes,
    });
    Ok((verdict(data.orientable == expected), details))
}

fn check_double_cover(cfg: &RunConfig, built: &Built) -> Result<(CheckStatus, Value)> {
    let dc = orientation_double_cover(&built.x.complex)?;
    match cfg.params.group {
        GroupKind::G => {
            let h = built.hat.as_ref().ok_or_else(hat_missing)?;
            let (pv, pt) = &h.projection;
            let iso = covers_isomorphic_over_base(
                &dc.complex,
                &dc.top_to_base,
                &h.x.complex,
                pt,
                &dc.vertex_to_base,
                pv,
                &built.x.complex,
            )?;
            let details = json!({
                "cover_tops": dc.complex.tops().len(),
                "isomorphic_to_companion_over_base": iso,
            });
            Ok((verdict(iso), details))
        }
        GroupKind::Ghat => {
            // An orientable base has a disconnected double cover: two
            // copies of the base.
            let d = 2 * cfg.params.k as usize;
            let rep = verify_closed_pseudomanifold(&dc.complex, d)?;
            let split = rep.bad_ridge_count == 0 && rep.strong_components == 2;
            let chi_ok = dc.complex.euler_characteristic()
                == 2 * built.x.complex.euler_characteristic();
            let details = json!({
                "cover_tops": dc.complex.tops().len(),
                "cover_components": rep.strong_components,
                "euler_doubles": chi_ok,
            });
            Ok((verdict(split && chi_ok), details))
        }
    }
}

fn check_euler(cfg: &RunConfig, built: &Built) -> Result<(CheckStatus, Value)> {
    let hp = cfg.params.with_group(GroupKind::Ghat);
    let k = cfg.params.skeleton_dim();
    let mut counts = Vec::new();
    let mut ours_form = Vec::new();
    let mut published_form = Vec::new();
    for i in 0..=k {
        counts.push(cubical_cell_count(hp, i)?);
        let (ours, published) = cell_count_closed_forms(hp, i);
        ours_form.push(ours);
        published_form.push(published);
    }
    let ours_agree = counts == ours_form;
    let published_agree = counts == published_form;
    let chi_skeleton = euler_from_cell_counts(hp)?;
    let chi_x = built.x.complex.euler_characteristic();
    let expected = match cfg.params.group {
        GroupKind::G => chi_skeleton,
        GroupKind::Ghat => 2 * chi_skeleton,
    };
    let details = json!({
        "cell_counts": counts,
        "closed_form": ours_form,
        "closed_form_agrees": ours_agree,
        "published_form": published_form,
        "published_form_agrees": published_agree,
        "skeleton_euler": chi_skeleton,
        "hypersurface_euler": chi_x,
        "expected_hypersurface_euler": expected,
    });
    Ok((verdict(ours_agree && chi_x == expected), details))
}

fn check_cocycle_h1(cfg: &RunConfig, built: &Built) -> Result<(CheckStatus, Value)> {
    let x = &built.x;
    let table = x.complex.face_table();
    let axes = 2 * cfg.params.k as usize;
    let mut nonzero = Vec::new();
    let mut pulled_nonzero = Vec::new();
    let hat_table = built
        .hat
        .as_ref()
        .map(|h| h.x.complex.face_table());
    for axis in 1..=axes {
        let c = coordinate_cocycle(x, &table, axis)?;
        nonzero.push(cohomology_class_is_nonzero(&table, &c)?);
        if let (Some(h), Some(ht)) = (&built.hat, &hat_table) {
            let pc = pullback(ht, &table, &h.projection.0, &c)?;
            pulled_nonzero.push(cohomology_class_is_nonzero(ht, &pc)?);
        }
    }
    let ok = nonzero.iter().all(|&b| b) && pulled_nonzero.iter().all(|&b| b);
    let details = json!({
        "axes": axes,
        "classes_nonzero": nonzero,
        "pullback_classes_nonzero": pulled_nonzero,
    });
    Ok((verdict(ok), details))
}

fn check_mod2_degree(cfg: &RunConfig, built: &Built) -> Result<(CheckStatus, Value)> {
    if cfg.params.group == GroupKind::Ghat {
        return Ok((
            CheckStatus::Skipped,
            json!({
                "note": "the mixing translation is not in this lattice, so its segment does not close up in the quotient",
            }),
        ));
    }
    let x = &built.x;
    let n = cfg.params.ambient_dim();
    let start = RatVec((0..n).map(|i| Rat::new(1, 64i128 << i)).collect());
    let mix_end = start.add(&mixing_translation(cfg.params));
    let mix_parity =
        mod2_segment_intersection(&x.complex, x.lifts.as_ref(), &start, &mix_end)?;

    let mut axis_step = RatVec::zeros(n);
    axis_step.0[0] = Rat::from_int(cfg.params.l as i128);
    let axis_end = start.add(&axis_step);
    let axis_parity =
        mod2_segment_intersection(&x.complex, x.lifts.as_ref(), &start, &axis_end)?;

    let details = json!({
        "mixing_loop_parity": mix_parity,
        "axis_loop_parity": axis_parity,
    });
    Ok((verdict(mix_parity == 1 && axis_parity == 0), details))
}

fn write_artifacts(
    cfg: &RunConfig,
    built: &Built,
    dir: &std::path::Path,
    artifacts: &mut BTreeMap<String, String>,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut files: Vec<(String, String)> =
        vec![("x.scx".into(), to_scx_string(&built.x.complex))];
    if cfg.emit_neighborhoods {
        if cfg.params.group == GroupKind::G {
            if let Some(hx) = built.hat_x() {
                files.push(("x-hat.scx".into(), to_scx_string(&hx.complex)));
            }
        }
        if let Some(pair) = built.hat_pair() {
            for (which, name) in [
                (Skeleton::Integral, "n-integral.scx"),
                (Skeleton::Shifted, "n-shifted.scx"),
            ] {
                let n = extract_subcomplex(&pair.sub.complex, &pair.neighborhood(which));
                files.push((name.into(), to_scx_string(&n.complex)));
            }
        }
    }
    for (name, content) in files {
        std::fs::write(dir.join(&name), &content)?;
        artifacts.insert(name, sha256_hex(content.as_bytes()));
    }
    Ok(())
}
