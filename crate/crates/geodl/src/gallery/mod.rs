//! Executable counterexamples: every known separation between the embedding
//! methods' geometric semantics and classical reasoning, packaged as
//! self-verifying cases.
//!
//! Each case bundles a KB (shipped as a data file), optionally a witness
//! embedding, and a claim that is machine-checked through the semantics, the
//! oracle and the auditor; universal claims ("every model of this KB ...")
//! are checked both on a batch of synthesized models and by replaying the
//! underlying inequality derivation through the linear-certificate checker.
//! Running a case either passes or names the exact failed sub-check.

mod cases_completeness;
mod cases_expressiveness;
mod cases_faithfulness;
mod cases_soundness;
mod support;

use crate::config::Config;
use crate::report::{CaseReport, GalleryReport};

pub use support::CaseCtx;

/// A single gallery case: an id, a one-line claim, and a runner.
pub struct GalleryCase {
    pub id: &'static str,
    pub summary: &'static str,
    pub run: fn(&Config) -> CaseReport,
}

/// The coverage manifest: every case id with its claim hook. Tests check
/// this list against [`all_cases`] for completeness in both directions.
pub const MANIFEST: &[(&str, &str)] = &[
    ("ball-empty-unsound", "an inconsistent KB has a verified ball-method model"),
    ("ball-loss-margin", "the ball loss is zero on that model at margin zero, positive at a negative margin"),
    ("box2el-bump-unsound", "an inconsistent KB has a verified head/tail-box model built from bumps"),
    ("affine-graph-sound", "affine-box models of consistent KBs pass the soundness audit"),
    ("boxe-band-pattern-sound", "box-pair and band models of pattern KBs pass the soundness audit"),
    ("conv-exclusion-midpoint", "the swapped-pair KB is satisfiable but has no convex model: the midpoint witness"),
    ("boxe-exclusion-incomplete", "the crossed-pair KB is satisfiable but has no box-pair model: bump order contradiction"),
    ("ball-top-bottom-incomplete", "a satisfiable KB with no ball or translated-box model: zero versus infinite radius"),
    ("affine-functional-incomplete", "a satisfiable KB with no affine-box model: functional images collapse two individuals"),
    ("box2el-hierarchy-incomplete", "a satisfiable KB with no head/tail-box model: the head is forced empty yet inhabited"),
    ("band-exclusion-incomplete", "the swapped-pair KB has no band model either: slices are convex"),
    ("cone-valuation-complete", "consistent propositional KBs always have cone models and the construction finds them"),
    ("conv-simplex-complete", "consistent inverse-fragment KBs yield convex models via the simplex construction"),
    ("box2el-not-abox-entailed", "a satisfiable variant entails two assertions its bump witness fails"),
    ("conv-closure-weak-faithful", "convex models satisfy every entailed axiom and nothing inconsistent"),
    ("conv-not-strong-guarantee", "a trivial convex model satisfies non-entailed axioms"),
    ("cone-not-strong-guarantee", "a collapsed cone model satisfies non-entailed axioms"),
    ("cone-membership-gap", "a cone model can leave an assertion and its negation both unsatisfied"),
    ("ball-forced-members", "every ball model of the fork KB satisfies both forced assertions"),
    ("box2el-composition-leak", "every head/tail model satisfies the stronger composition consequence"),
    ("ball-disjoint-premises-leak", "every ball model makes the filler concepts disjoint"),
    ("conv-strong-faithful-construction", "a disjoint-union simplex model is strongly faithful on its KB"),
    ("conv-helly-quadruple", "planar convex models of a 4-way disjointness always satisfy a non-entailed 3-way one"),
    ("ball-swap-pair-inexpressible", "no ball model separates the swapped pair from the loop fact"),
    ("bottom-conflation-not-tbox-expressive", "the empty-filler axiom and the plain bottom axiom share truth conditions"),
    ("affine-merge-not-abox-expressive", "functional images force a third assertion from three facts"),
    ("affine-preimage-not-tbox-expressive", "affine preimages leak the existential over the conjunction"),
    ("box2el-bump-abox-separation", "bump constructions separate arbitrary fact sets for head/tail boxes"),
    ("boxe-abox-separation", "bump constructions separate arbitrary fact sets for box pairs"),
    ("band-abox-separation", "per-dimension slices separate arbitrary role-fact sets"),
    ("boxe-pattern-tbox-separation", "box pairs separate pattern sets from non-entailed patterns"),
    ("band-symmetric-capture", "capture exactly/exclusively coincides with strong faithfulness on pattern sets"),
    ("vector-sum-composition-order", "vector-sum composition cannot distinguish the order of the composed roles"),
];

pub fn all_cases() -> Vec<GalleryCase> {
    let mut cases = Vec::new();
    cases.extend(cases_soundness::cases());
    cases.extend(cases_completeness::cases());
    cases.extend(cases_faithfulness::cases());
    cases.extend(cases_expressiveness::cases());
    cases
}

/// Runs every case whose id contains `filter` (all cases for an empty
/// filter); unknown ids yield an empty report.
pub fn run_gallery(filter: &str, cfg: &Config) -> GalleryReport {
    let cases = all_cases();
    let mut reports = Vec::new();
    for case in cases {
        if !filter.is_empty() && !case.id.contains(filter) {
            continue;
        }
        reports.push((case.run)(cfg));
    }
    GalleryReport { cases: reports }
}
