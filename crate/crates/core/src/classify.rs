//! The combined classifier: runs the decision ladder and collects every
//! verdict together with the result it rests on.

use serde::Serialize;

use crate::cover::{cover_certificate, CoverCertificate};
use crate::error::{Error, Result};
use crate::fold::{
    find_collapsing_map, is_bipartite_dismantlable, is_dismantlable, is_four_cycle_hom_free, CollapseLimits,
    CollapseSearch,
};
use crate::graph::Graph;
use crate::sofic::{minimal_gluing_distance_with, witness_json, SoficLimits};
use crate::walk::DEFAULT_WALK_BUDGET;

pub const SCHEMA_VERSION: u32 = 1;

/// Names of the results a verdict can rest on.
pub mod tags {
    /// Transitive iff connected; mixing iff also not bipartite.
    pub const TRANSITIVITY: &str = "transitivity-criterion";
    /// Bipartite-dismantlable graphs give phased SI hom-shifts.
    pub const DISMANTLABLE: &str = "dismantlable-gluing";
    /// For four-cycle hom-free graphs phased SI, phased block-gluing and
    /// bipartite-dismantlability coincide.
    pub const FOUR_CYCLE_FREE: &str = "four-cycle-hom-free-characterisation";
    /// For four-cycle hom-free graphs bipartite-dismantlability is
    /// finiteness of the universal cover.
    pub const COVER: &str = "universal-cover-finiteness";
    /// A collapsing map bounds the walk-graph diameter.
    pub const COLLAPSING: &str = "collapsing-map";
    /// Gluing at distance `2n` is surjectivity onto the TB shift.
    pub const SOFIC: &str = "sofic-surjectivity";
    /// Without bipartiteness the phased properties drop their phase.
    pub const UNPHASED: &str = "unphased-from-phased";
    /// Bipartite graphs are never block-gluing or SI.
    pub const BIPARTITE: &str = "bipartite-obstruction";
    /// SI implies block-gluing, block-gluing implies its phased form,
    /// and the phased form implies transitivity.
    pub const HIERARCHY: &str = "gluing-hierarchy";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tristate {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub verdict: Tristate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub by: Option<&'static str>,
}

impl Verdict {
    pub const UNKNOWN: Verdict = Verdict {
        verdict: Tristate::Unknown,
        by: None,
    };

    fn yes(by: &'static str) -> Self {
        Verdict {
            verdict: Tristate::Yes,
            by: Some(by),
        }
    }

    fn no(by: &'static str) -> Self {
        Verdict {
            verdict: Tristate::No,
            by: Some(by),
        }
    }

    pub fn is_yes(self) -> bool {
        self.verdict == Tristate::Yes
    }

    pub fn is_no(self) -> bool {
        self.verdict == Tristate::No
    }

    pub fn is_unknown(self) -> bool {
        self.verdict == Tristate::Unknown
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub loops: usize,
    pub looped_vertices: Vec<String>,
    pub max_degree: usize,
    pub components: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    NotFoundWithinCap,
    BudgetExceeded,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceCheck {
    pub n: usize,
    pub glues: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingDistanceReport {
    /// Smallest even distance found, `2n` with `n <= n_cap`.
    pub distance: Option<usize>,
    pub n_cap: usize,
    pub status: SearchStatus,
    pub checks: Vec<DistanceCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub claim: String,
    pub by: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub graph: GraphSummary,
    pub connected: bool,
    pub bipartite: bool,
    pub transitive: bool,
    pub mixing: bool,
    pub four_cycle_hom_free: Option<bool>,
    pub dismantlable: Option<bool>,
    pub bipartite_dismantlable: Option<bool>,
    pub cover_finite: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_cycle: Option<Vec<[String; 2]>>,
    pub collapsible: Tristate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collapsing_map: Option<Vec<[String; 2]>>,
    pub phased_si: Verdict,
    pub phased_block_gluing: Verdict,
    pub si: Verdict,
    pub block_gluing: Verdict,
    pub gluing_set: [&'static str; 2],
    pub gluing_distance: GluingDistanceReport,
    pub provenance: Vec<Claim>,
}

impl ClassificationReport {
    /// Structural implications every report must satisfy.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Inconsistent(format!("report invariant violated: {what}")));
        if self.mixing && !self.transitive {
            return fail("mixing without transitivity");
        }
        if self.phased_si.is_yes() && !self.phased_block_gluing.is_yes() {
            return fail("phased SI without phased block-gluing");
        }
        if self.si.is_yes() && !self.block_gluing.is_yes() {
            return fail("SI without block-gluing");
        }
        if self.block_gluing.is_yes() && !self.phased_block_gluing.is_yes() {
            return fail("block-gluing without its phased form");
        }
        if self.dismantlable == Some(true) && self.bipartite_dismantlable != Some(true) {
            return fail("dismantlable but not bipartite-dismantlable");
        }
        if self.gluing_distance.distance.is_some() && self.phased_block_gluing.is_no() {
            return fail("a gluing distance for a shift that is not phased block-gluing");
        }
        for v in [
            self.phased_si,
            self.phased_block_gluing,
            self.si,
            self.block_gluing,
        ] {
            if !v.is_unknown() && v.by.is_none() {
                return fail("a verdict without provenance");
            }
        }
        Ok(())
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` tried by the gluing-distance search.
    pub max_n: usize,
    pub walk_budget: u128,
    pub subset_budget: usize,
    pub collapse_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        let sofic = SoficLimits::default();
        Limits {
            max_n: 2,
            walk_budget: DEFAULT_WALK_BUDGET,
            subset_budget: sofic.subset_budget,
            collapse_budget: CollapseLimits::default().node_budget,
        }
    }
}

fn summary(g: &Graph) -> GraphSummary {
    GraphSummary {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        loops: g.loop_count(),
        looped_vertices: g
            .vertices()
            .filter(|&v| g.has_loop(v))
            .map(|v| g.name(v).to_string())
            .collect(),
        max_degree: g.max_degree(),
        components: g.component_vertex_sets().len(),
    }
}

pub fn classify(g: &Graph, limits: &Limits) -> Result<ClassificationReport> {
    let connected = g.is_connected();
    let bipartite = g.is_bipartite();
    let mut provenance = vec![Claim {
        claim: format!("transitive = {connected}, mixing = {}", connected && !bipartite),
        by: tags::TRANSITIVITY,
    }];
    let mut report = ClassificationReport {
        schema: SCHEMA_VERSION,
        graph: summary(g),
        connected,
        bipartite,
        transitive: connected,
        mixing: connected && !bipartite,
        four_cycle_hom_free: None,
        dismantlable: None,
        bipartite_dismantlable: None,
        cover_finite: None,
        cover_cycle: None,
        collapsible: Tristate::Unknown,
        collapsing_map: None,
        phased_si: Verdict::UNKNOWN,
        phased_block_gluing: Verdict::UNKNOWN,
        si: Verdict::UNKNOWN,
        block_gluing: Verdict::UNKNOWN,
        gluing_set: ["0", "e1"],
        gluing_distance: GluingDistanceReport {
            distance: None,
            n_cap: limits.max_n,
            status: SearchStatus::Skipped,
            checks: Vec::new(),
            note: None,
        },
        provenance: Vec::new(),
    };

    if !connected {
        report.phased_block_gluing = Verdict::no(tags::HIERARCHY);
        report.phased_si = Verdict::no(tags::HIERARCHY);
        provenance.push(Claim {
            claim: "not transitive, so no form of gluing holds".into(),
            by: tags::HIERARCHY,
        });
        finish_unphased(&mut report, &mut provenance);
        report.provenance = provenance;
        report.check_invariants()?;
        return Ok(report);
    }

    let fc_free = is_four_cycle_hom_free(g);
    let dismantlable = is_dismantlable(g)?;
    let bd = is_bipartite_dismantlable(g)?;
    let certificate = cover_certificate(g)?;
    let cover_finite = certificate.is_finite();
    report.four_cycle_hom_free = Some(fc_free);
    report.dismantlable = Some(dismantlable);
    report.bipartite_dismantlable = Some(bd);
    report.cover_finite = Some(cover_finite);
    if let CoverCertificate::Infinite { .. } = certificate {
        report.cover_cycle = Some(certificate.cycle_names(g));
    }
    match find_collapsing_map(
        g,
        CollapseLimits {
            node_budget: limits.collapse_budget,
        },
    )? {
        CollapseSearch::Found(map) => {
            report.collapsible = Tristate::Yes;
            report.collapsing_map = Some(map.to_names(g));
        }
        CollapseSearch::Absent => report.collapsible = Tristate::No,
        CollapseSearch::Unknown => report.collapsible = Tristate::Unknown,
    }

    if bd {
        report.phased_si = Verdict::yes(tags::DISMANTLABLE);
        report.phased_block_gluing = Verdict::yes(tags::DISMANTLABLE);
        provenance.push(Claim {
            claim: "bipartite-dismantlable, so phased SI and phased block-gluing".into(),
            by: tags::DISMANTLABLE,
        });
    }

    if fc_free {
        if bd != cover_finite {
            return Err(Error::Inconsistent(format!(
                "four-cycle hom-free graph with bipartite-dismantlable = {bd} but finite cover = {cover_finite}"
            )));
        }
        provenance.push(Claim {
            claim: format!("cover finite = {cover_finite} agrees with bipartite-dismantlable = {bd}"),
            by: tags::COVER,
        });
        if !bd {
            report.phased_si = Verdict::no(tags::FOUR_CYCLE_FREE);
            report.phased_block_gluing = Verdict::no(tags::FOUR_CYCLE_FREE);
        }
        provenance.push(Claim {
            claim: format!("four-cycle hom-free, so phased SI = phased block-gluing = {bd}"),
            by: tags::FOUR_CYCLE_FREE,
        });
    } else if report.collapsible == Tristate::Yes && report.phased_block_gluing.is_unknown() {
        report.phased_block_gluing = Verdict::yes(tags::COLLAPSING);
        provenance.push(Claim {
            claim: "a collapsing map exists, so phased block-gluing".into(),
            by: tags::COLLAPSING,
        });
    }

    run_distance_search(g, limits, &mut report, &mut provenance)?;
    finish_unphased(&mut report, &mut provenance);
    report.provenance = provenance;
    report.check_invariants()?;
    Ok(report)
}

fn run_distance_search(
    g: &Graph,
    limits: &Limits,
    report: &mut ClassificationReport,
    provenance: &mut Vec<Claim>,
) -> Result<()> {
    let sofic = SoficLimits {
        walk_budget: limits.walk_budget,
        subset_budget: limits.subset_budget,
    };
    let gd = &mut report.gluing_distance;
    match minimal_gluing_distance_with(g, limits.max_n, sofic) {
        Ok(result) => {
            gd.distance = result.distance;
            gd.checks = result
                .checks
                .iter()
                .map(|c| DistanceCheck {
                    n: c.n,
                    glues: c.glues,
                    witness: c.witness.as_ref().map(|w| witness_json(g, w)),
                })
                .collect();
            gd.status = if result.distance.is_some() {
                SearchStatus::Found
            } else {
                SearchStatus::NotFoundWithinCap
            };
        }
        Err(Error::Resource { .. }) => gd.status = SearchStatus::BudgetExceeded,
        Err(e) => return Err(e),
    }
    match (gd.distance, report.phased_block_gluing.verdict) {
        (Some(_), Tristate::No) => {
            return Err(Error::Inconsistent(
                "the gluing-distance search glued a shift the structural results rule out".into(),
            ))
        }
        (Some(d), Tristate::Unknown) => {
            report.phased_block_gluing = Verdict::yes(tags::SOFIC);
            provenance.push(Claim {
                claim: format!("glues at distance {d}"),
                by: tags::SOFIC,
            });
        }
        (Some(d), Tristate::Yes) => provenance.push(Claim {
            claim: format!("glues at distance {d}"),
            by: tags::SOFIC,
        }),
        (None, Tristate::No) => {
            gd.note = Some(format!(
                "not phased block-gluing ({})",
                report.phased_block_gluing.by.unwrap_or(tags::HIERARCHY)
            ))
        }
        (None, _) if gd.status == SearchStatus::NotFoundWithinCap => {
            gd.note = Some("no gluing distance up to the cap; larger distances were not examined".into())
        }
        _ => {}
    }
    if report.four_cycle_hom_free == Some(true)
        && gd.distance.is_some()
        && report.bipartite_dismantlable != Some(true)
    {
        return Err(Error::Inconsistent(
            "four-cycle hom-free graph glues without being bipartite-dismantlable".into(),
        ));
    }
    Ok(())
}

fn finish_unphased(report: &mut ClassificationReport, provenance: &mut Vec<Claim>) {
    if report.phased_block_gluing.is_no() && report.phased_si.is_unknown() {
        report.phased_si = Verdict::no(tags::HIERARCHY);
    }
    if report.bipartite {
        report.block_gluing = Verdict::no(tags::BIPARTITE);
        report.si = Verdict::no(tags::BIPARTITE);
        provenance.push(Claim {
            claim: "bipartite, so neither block-gluing nor SI".into(),
            by: tags::BIPARTITE,
        });
        return;
    }
    for (phased, unphased) in [
        (report.phased_block_gluing, &mut report.block_gluing),
        (report.phased_si, &mut report.si),
    ] {
        *unphased = match phased.verdict {
            Tristate::Yes => Verdict::yes(tags::UNPHASED),
            Tristate::No => Verdict::no(tags::HIERARCHY),
            Tristate::Unknown => Verdict::UNKNOWN,
        };
    }
    if report.phased_block_gluing.is_yes() {
        provenance.push(Claim {
            claim: "not bipartite, so the phased verdicts hold without phase".into(),
            by: tags::UNPHASED,
        });
    }
}
