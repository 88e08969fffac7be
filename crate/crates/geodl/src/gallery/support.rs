//! Shared plumbing for gallery cases: check accumulation, model sampling and
//! data-file access.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::audit::{search_model, Certificate, SearchGoal};
use crate::config::Config;
use crate::kb::{parse_kb, KnowledgeBase};
use crate::report::{CaseReport, CheckLine};
use crate::semantics::{Embedding, Method};

/// Accumulates named pass/fail checks and certificates for one case.
pub struct CaseCtx<'a> {
    pub cfg: &'a Config,
    checks: Vec<CheckLine>,
    certs: Vec<Certificate>,
}

impl<'a> CaseCtx<'a> {
    pub fn new(cfg: &'a Config) -> Self {
        CaseCtx { cfg, checks: Vec::new(), certs: Vec::new() }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckLine { name: name.into(), pass, detail: detail.into() });
        pass
    }

    /// Records an error as a failed check.
    pub fn step<T, E: std::fmt::Display>(&mut self, name: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(name, false, format!("error: {e}"));
                None
            }
        }
    }

    pub fn cert(&mut self, c: Certificate) {
        self.certs.push(c);
    }

    pub fn finish(self, id: &str, summary: &str) -> CaseReport {
        let pass = !self.checks.is_empty() && self.checks.iter().all(|c| c.pass);
        CaseReport {
            id: id.into(),
            summary: summary.into(),
            pass,
            checks: self.checks,
            certificates: self.certs,
        }
    }
}

/// Loads one of the shipped KB data files.
pub fn data_kb(text: &'static str) -> KnowledgeBase {
    parse_kb(text).expect("shipped KB parses")
}

pub mod data {
    pub const BALL_UNSOUND_KB: &str = include_str!("../../gallery-data/ball_unsound.kb");
    pub const BALL_UNSOUND_EMB: &str = include_str!("../../gallery-data/ball_unsound.emb");
    pub const CONV_EXCLUSION_KB: &str = include_str!("../../gallery-data/conv_exclusion.kb");
    pub const BOXE_EXCLUSION_KB: &str = include_str!("../../gallery-data/boxe_exclusion.kb");
    pub const BOX2EL_UNSOUND_KB: &str = include_str!("../../gallery-data/box2el_unsound.kb");
    pub const BOX2EL_UNSOUND_EMB: &str = include_str!("../../gallery-data/box2el_unsound.emb");
    pub const BOX2EL_ENTAILED_KB: &str = include_str!("../../gallery-data/box2el_entailed.kb");
    pub const BALL_FORCED_KB: &str = include_str!("../../gallery-data/ball_forced.kb");
    pub const BOX2EL_COMP_KB: &str = include_str!("../../gallery-data/box2el_comp.kb");
    pub const BALL_DISJOINT_KB: &str = include_str!("../../gallery-data/ball_disjoint.kb");
    pub const BALL_PAIR_SWAP_KB: &str = include_str!("../../gallery-data/ball_pair_swap.kb");
    pub const BALL_TOP_BOTTOM_KB: &str = include_str!("../../gallery-data/ball_top_bottom.kb");
    pub const AFFINE_INCOMPLETE_KB: &str = include_str!("../../gallery-data/affine_incomplete.kb");
    pub const AFFINE_MERGE_KB: &str = include_str!("../../gallery-data/affine_merge.kb");
    pub const AFFINE_TBOX_KB: &str = include_str!("../../gallery-data/affine_tbox.kb");
    pub const BOX2EL_INCOMPLETE_KB: &str = include_str!("../../gallery-data/box2el_incomplete.kb");
}

/// Synthesizes up to `want` verified models of `kb`, varying the seed.
/// Returns fewer when the budget runs dry; callers decide how many suffice.
pub fn sample_models(
    method: Method,
    kb: &KnowledgeBase,
    want: usize,
    dim: usize,
    cfg: &Config,
) -> Vec<Embedding> {
    let mut out = Vec::new();
    let mut attempt = 0u64;
    while out.len() < want && attempt < (want as u64) * 8 {
        let sub = Config {
            seed: cfg.seed.wrapping_mul(0x9e37_79b9).wrapping_add(attempt),
            search_budget: 20_000,
            ..cfg.clone()
        };
        let goal = SearchGoal { kb, falsify: &[] };
        if let Ok(Some(e)) = search_model(&goal, method, dim, &sub) {
            out.push(e);
        }
        attempt += 1;
    }
    out
}

/// A deterministic RNG for case-local sampling.
pub fn case_rng(cfg: &Config, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt)
}

/// Builds a convex model of a satisfiable KB that is strongly faithful on
/// the KB's finite language: the disjoint union of a bounded model with
/// countermodels for every non-entailed axiom, pushed through the simplex
/// construction. Components are added iteratively until no satisfied
/// non-entailed axiom remains (or the bound is hit).
pub fn conv_strongly_faithful(
    kb: &KnowledgeBase,
    cfg: &Config,
) -> Result<Option<Embedding>, crate::audit::AuditError> {
    use crate::kb::FiniteInterpretation;
    let base = match crate::reasoner::finite_model_search(kb, 3)? {
        Some(m) => m,
        None => return Ok(None),
    };
    let mut components: Vec<FiniteInterpretation> = vec![base];
    let budget = cfg.fm_budget();
    for _round in 0..10 {
        let union = disjoint_union(&components);
        let e = crate::audit::conv_from_interpretation(&union)?;
        if !crate::semantics::is_model(&e, kb, &budget)?.value {
            return Ok(None);
        }
        let violations = crate::audit::audit_strong_faithfulness(&e, kb, cfg)?;
        let Some(ax) = violations.all().next() else {
            return Ok(Some(e));
        };
        match crate::reasoner::finite_countermodel(kb, ax, 3)? {
            Some(m) => components.push(m),
            None => return Ok(None), // bound too small for this axiom
        }
    }
    Ok(None)
}

/// Disjoint union of finite models: concept and role extensions are unioned
/// with shifted indices; individuals are interpreted in the first component.
pub fn disjoint_union(parts: &[crate::kb::FiniteInterpretation]) -> crate::kb::FiniteInterpretation {
    use std::collections::{BTreeMap, BTreeSet};
    let mut domain = Vec::new();
    let mut concept_ext: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    let mut role_ext: BTreeMap<String, BTreeSet<(usize, usize)>> = BTreeMap::new();
    let mut ind_map: BTreeMap<String, usize> = BTreeMap::new();
    let mut offset = 0usize;
    for (idx, part) in parts.iter().enumerate() {
        for (k, d) in part.domain.iter().enumerate() {
            domain.push(format!("c{idx}_{d}_{k}"));
        }
        for (name, members) in &part.concept_ext {
            let entry = concept_ext.entry(name.clone()).or_default();
            entry.extend(members.iter().map(|m| m + offset));
        }
        for (name, pairs) in &part.role_ext {
            let entry = role_ext.entry(name.clone()).or_default();
            entry.extend(pairs.iter().map(|(x, y)| (x + offset, y + offset)));
        }
        if idx == 0 {
            for (ind, e) in &part.ind_map {
                ind_map.insert(ind.clone(), e + offset);
            }
        }
        offset += part.domain.len();
    }
    crate::kb::FiniteInterpretation { domain, concept_ext, role_ext, ind_map }
}
