//! Soundness cases: verified models of inconsistent KBs for the methods that
//! admit them, loss behaviour around the margin, and passing soundness
//! audits for the methods whose semantics factor through a classical
//! interpretation.

use crate::audit::{audit_soundness_instance, synth_model, AuditOutcome};
use crate::config::Config;
use crate::kb::parse_kb;
use crate::rat::{rat, rint};
use crate::reasoner;
use crate::report::CaseReport;
use crate::semantics::{self, elem_loss, io as semio, Method};

use super::support::{data, data_kb, sample_models, CaseCtx};
use super::GalleryCase;

pub fn cases() -> Vec<GalleryCase> {
    vec![
        GalleryCase {
            id: "ball-empty-unsound",
            summary: "an inconsistent KB has a verified ball-method model",
            run: ball_empty_unsound,
        },
        GalleryCase {
            id: "ball-loss-margin",
            summary: "zero loss at margin zero on the unsound witness; 1/10 at margin -1/10",
            run: ball_loss_margin,
        },
        GalleryCase {
            id: "box2el-bump-unsound",
            summary: "an inconsistent KB has a verified head/tail-box model built from bumps",
            run: box2el_bump_unsound,
        },
        GalleryCase {
            id: "affine-graph-sound",
            summary: "affine-box models of consistent KBs pass the soundness audit",
            run: affine_graph_sound,
        },
        GalleryCase {
            id: "boxe-band-pattern-sound",
            summary: "box-pair and band models of pattern KBs pass the soundness audit",
            run: boxe_band_pattern_sound,
        },
    ]
}

fn ball_empty_unsound(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kb = data_kb(data::BALL_UNSOUND_KB);
    let Some(e) = ctx.step("parse witness", semio::embedding_from_str(data::BALL_UNSOUND_EMB))
    else {
        return ctx.finish("ball-empty-unsound", "witness failed to parse");
    };
    if let Some(v) = ctx.step("model check", semantics::is_model(&e, &kb, &cfg.fm_budget())) {
        ctx.check("is a model", v.value, "both axioms hold on the empty ball");
        ctx.check(
            "verdict is exact",
            v.exactness == semantics::Exactness::Exact,
            format!("{:?}", v.exactness),
        );
    }
    if let Some(consistent) = ctx.step("oracle", reasoner::consistent(&kb)) {
        ctx.check("KB is inconsistent", !consistent, "bottom membership is derived");
    }
    match ctx.step("soundness audit", audit_soundness_instance(&e, &kb, cfg)) {
        Some(AuditOutcome::Violation(cert)) => {
            let ok = cert.reverify(cfg).unwrap_or(false);
            ctx.check("unsoundness witness reverifies", ok, "certificate replayed");
            ctx.cert(cert);
        }
        Some(AuditOutcome::Pass) => {
            ctx.check("unsoundness witness", false, "audit unexpectedly passed");
        }
        None => {}
    }
    ctx.finish("ball-empty-unsound", "inconsistent KB with a verified ball model")
}

fn ball_loss_margin(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kb = data_kb(data::BALL_UNSOUND_KB);
    let Some(e) = ctx.step("parse witness", semio::embedding_from_str(data::BALL_UNSOUND_EMB))
    else {
        return ctx.finish("ball-loss-margin", "witness failed to parse");
    };
    if let Some(loss0) = ctx.step("loss at margin 0", elem_loss(&e, &kb, &rint(0))) {
        ctx.check("loss is exactly 0", loss0 == rint(0), crate::rat::fmt_rat(&loss0));
    }
    if let Some(consistent) = ctx.step("oracle", reasoner::consistent(&kb)) {
        ctx.check("KB remains inconsistent", !consistent, "zero loss on an inconsistent KB");
    }
    if let Some(loss_neg) = ctx.step("loss at margin -1/10", elem_loss(&e, &kb, &rat(-1, 10))) {
        ctx.check(
            "loss is exactly 1/10",
            loss_neg == rat(1, 10),
            crate::rat::fmt_rat(&loss_neg),
        );
    }
    // Equivalent concepts cannot reach zero loss under a strictly negative
    // margin: each inclusion of the pair contributes the margin.
    let eq_kb = parse_kb("Language: ELO-bot-nf\nSubClassOf(A B)\nSubClassOf(B A)").unwrap();
    let mut eq = semantics::Embedding::new(Method::Elem, 2);
    let ball = crate::geom::OpenBall::new(
        crate::geom::RVector::from_ints(&[1, 0]),
        crate::rat::Ext::Fin(rat(1, 2)),
    )
    .unwrap();
    eq.concepts.insert("A".into(), semantics::ConceptPayload::Ball(ball.clone()));
    eq.concepts.insert("B".into(), semantics::ConceptPayload::Ball(ball));
    if let Some(l) = ctx.step("equivalent concepts at margin -1/10", elem_loss(&eq, &eq_kb, &rat(-1, 10))) {
        ctx.check("loss stays positive", l == rat(2, 10), crate::rat::fmt_rat(&l));
    }
    ctx.finish("ball-loss-margin", "loss values around the margin on the unsound witness")
}

fn box2el_bump_unsound(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kb = data_kb(data::BOX2EL_UNSOUND_KB);
    let Some(e) = ctx.step("parse witness", semio::embedding_from_str(data::BOX2EL_UNSOUND_EMB))
    else {
        return ctx.finish("box2el-bump-unsound", "witness failed to parse");
    };
    // verify constraint by constraint (through the nominal encoding)
    let encoded = crate::kb::abox_to_tbox(&kb).unwrap();
    for ax in &encoded.tbox {
        match semantics::satisfies(&e, ax, &cfg.fm_budget()) {
            Ok(v) => {
                ctx.check(&format!("satisfies {}", crate::kb::axiom_text(ax)), v.value, "");
            }
            Err(err) => {
                ctx.check("constraint evaluation", false, err.to_string());
            }
        }
    }
    if let Some(consistent) = ctx.step("oracle", reasoner::consistent(&kb)) {
        ctx.check("KB is inconsistent", !consistent, "the two successors force disjoint members");
    }
    match ctx.step("soundness audit", audit_soundness_instance(&e, &kb, cfg)) {
        Some(AuditOutcome::Violation(cert)) => {
            let ok = cert.reverify(cfg).unwrap_or(false);
            ctx.check("unsoundness witness reverifies", ok, "certificate replayed");
            ctx.cert(cert);
        }
        Some(AuditOutcome::Pass) => {
            ctx.check("unsoundness witness", false, "audit unexpectedly passed");
        }
        None => {}
    }
    ctx.finish("box2el-bump-unsound", "inconsistent KB with a verified head/tail-box model")
}

fn affine_graph_sound(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    for (name, text) in [
        ("chain", "Language: ELO-bot-nf\nSubClassOf(A Exists(r B))\nSubClassOf(B C)\nAssert(A a)"),
        ("disjointness", "Language: ELO-bot-nf\nSubClassOf(And(A B) Bot)\nAssert(A a)\nAssert(B b)"),
        ("merge", "Language: ELO-bot-nf\nAssert(r a b)\nAssert(r a c)\nAssert(A b)"),
    ] {
        let kb = parse_kb(text).unwrap();
        match synth_model(Method::Boxel, &kb, cfg) {
            Ok(Some(e)) => match audit_soundness_instance(&e, &kb, cfg) {
                Ok(AuditOutcome::Pass) => {
                    ctx.check(&format!("{name}: soundness audit passes"), true, "");
                }
                Ok(AuditOutcome::Violation(_)) => {
                    ctx.check(&format!("{name}: soundness audit"), false, "violation on a consistent KB");
                }
                Err(e) => {
                    ctx.check(&format!("{name}: soundness audit"), false, e.to_string());
                }
            },
            Ok(None) => {
                ctx.check(&format!("{name}: synthesis"), false, "no model found within budget");
            }
            Err(e) => {
                ctx.check(&format!("{name}: synthesis"), false, e.to_string());
            }
        }
    }
    ctx.finish("affine-graph-sound", "affine-box models pass the soundness audit")
}

fn boxe_band_pattern_sound(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let boxe_kb = parse_kb(
        "Language: patterns-no-comp\nPattern(Hierarchy r s)\nPattern(Symmetry r)\nAssert(r a b)",
    )
    .unwrap();
    for e in sample_models(Method::Boxe, &boxe_kb, 3, 2, cfg) {
        match audit_soundness_instance(&e, &boxe_kb, cfg) {
            Ok(AuditOutcome::Pass) => {
                ctx.check("box-pair model passes soundness", true, "");
            }
            other => {
                ctx.check("box-pair model passes soundness", false, format!("{other:?}"));
            }
        }
    }
    let expr_kb = parse_kb(
        "Language: patterns-full\nPattern(Hierarchy r s)\nAssert(r a b)\nAssert(s b a)",
    )
    .unwrap();
    for e in sample_models(Method::Expr, &expr_kb, 3, 2, cfg) {
        match audit_soundness_instance(&e, &expr_kb, cfg) {
            Ok(AuditOutcome::Pass) => {
                ctx.check("band model passes soundness", true, "");
            }
            other => {
                ctx.check("band model passes soundness", false, format!("{other:?}"));
            }
        }
    }
    ctx.finish("boxe-band-pattern-sound", "pattern models pass the soundness audit")
}
