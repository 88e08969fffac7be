//! Entailment-closure and faithfulness cases: models that miss entailed
//! axioms, models forced to satisfy non-consequences, methods whose models
//! are always closed and weakly faithful, the strongly faithful union
//! construction, and the planar disjointness collapse.


use crate::audit::farkas::{check_combination, Ineq, LinExpr};
use crate::audit::{
    audit_entailment_closure, audit_strong_faithfulness, audit_weak_faithfulness,
    faithfulness_certificate, synth_model, CertificateKind,
};
use crate::config::Config;
use crate::geom::{AlCone, ConeAxis, HPolyhedron, RVector};
use crate::kb::{axiom_text, parse_kb, Axiom, Concept, RoleAtom};
use crate::rat::rint;
use crate::reasoner;
use crate::report::CaseReport;
use crate::semantics::{self, io as semio, ConceptPayload, Embedding, IndPayload, Method};

use super::support::{case_rng, conv_strongly_faithful, data, data_kb, sample_models, CaseCtx};
use super::GalleryCase;

pub fn cases() -> Vec<GalleryCase> {
    vec![
        GalleryCase {
            id: "box2el-not-abox-entailed",
            summary: "a satisfiable variant entails two assertions its bump witness fails",
            run: box2el_not_abox_entailed,
        },
        GalleryCase {
            id: "conv-closure-weak-faithful",
            summary: "convex models satisfy every entailed axiom and nothing inconsistent",
            run: conv_closure_weak_faithful,
        },
        GalleryCase {
            id: "conv-not-strong-guarantee",
            summary: "a trivial convex model satisfies non-entailed axioms",
            run: conv_not_strong_guarantee,
        },
        GalleryCase {
            id: "cone-not-strong-guarantee",
            summary: "a collapsed cone model satisfies non-entailed axioms",
            run: cone_not_strong_guarantee,
        },
        GalleryCase {
            id: "cone-membership-gap",
            summary: "a cone model can leave an assertion and its negation both unsatisfied",
            run: cone_membership_gap,
        },
        GalleryCase {
            id: "ball-forced-members",
            summary: "every ball model of the fork KB satisfies both forced assertions",
            run: ball_forced_members,
        },
        GalleryCase {
            id: "box2el-composition-leak",
            summary: "every head/tail model satisfies the stronger composition consequence",
            run: box2el_composition_leak,
        },
        GalleryCase {
            id: "ball-disjoint-premises-leak",
            summary: "every ball model makes the filler concepts disjoint",
            run: ball_disjoint_premises_leak,
        },
        GalleryCase {
            id: "conv-strong-faithful-construction",
            summary: "a disjoint-union simplex model is strongly faithful on its KB",
            run: conv_strong_faithful_construction,
        },
        GalleryCase {
            id: "conv-helly-quadruple",
            summary: "planar convex models of a 4-way disjointness satisfy a non-entailed 3-way one",
            run: conv_helly_quadruple,
        },
    ]
}

fn box2el_not_abox_entailed(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kb = data_kb(data::BOX2EL_ENTAILED_KB);
    let Some(e) = ctx.step("parse witness", semio::embedding_from_str(data::BOX2EL_UNSOUND_EMB))
    else {
        return ctx.finish("box2el-not-abox-entailed", "witness failed to parse");
    };
    if let Some(c) = ctx.step("oracle", reasoner::el_consistent(&kb)) {
        ctx.check("KB is satisfiable", c, "");
    }
    for (concept, ind) in [("A", "a"), ("D", "a")] {
        let ax = Axiom::ConceptAssertion { concept: concept.into(), individual: ind.into() };
        let entailed = reasoner::el_entails(&kb, &ax).unwrap_or(false);
        ctx.check(&format!("{concept}({ind}) is entailed"), entailed, "");
    }
    if let Some(v) = ctx.step("model check", semantics::is_model(&e, &kb, &cfg.fm_budget())) {
        ctx.check("witness models the KB", v.value, "");
    }
    if let Some(violations) = ctx.step("entailment closure", audit_entailment_closure(&e, &kb, cfg)) {
        let texts: Vec<String> = violations.all().map(axiom_text).collect();
        let has_a = violations.assertional.iter().any(|ax| {
            matches!(ax, Axiom::ConceptInclusion { rhs: Concept::Name(n), .. } if n == "A")
        });
        let has_d = violations.assertional.iter().any(|ax| {
            matches!(ax, Axiom::ConceptInclusion { rhs: Concept::Name(n), .. } if n == "D")
        });
        ctx.check("closure violations include both assertions", has_a && has_d, texts.join("; "));
        let cert = faithfulness_certificate(
            CertificateKind::NonEntailedModel,
            &e,
            &kb,
            &violations,
            "entailed assertions unsatisfied by the bump witness",
        );
        let ok = cert.reverify(cfg).unwrap_or(false);
        ctx.check("certificate reverifies", ok, "");
        ctx.cert(cert);
    }
    ctx.finish("box2el-not-abox-entailed", "entailed assertions fail on the bump witness")
}

fn conv_closure_weak_faithful(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kbs = [
        "Language: ELHI-bot-nf\nSubClassOf(A B)\nSubClassOf(B C)\nAssert(A a)",
        "Language: ELHI-bot-nf\nSubClassOf(A Exists(r B))\nSubClassOf(Exists(r B) C)\nAssert(A a)",
        "Language: ELHI-bot-nf\nSubRoleOf(r s)\nAssert(r a b)",
    ];
    for (i, text) in kbs.iter().enumerate() {
        let kb = parse_kb(text).unwrap();
        match synth_model(Method::Conv, &kb, cfg) {
            Ok(Some(e)) => {
                match audit_entailment_closure(&e, &kb, cfg) {
                    Ok(v) => ctx.check(
                        &format!("kb {i}: closure violations empty"),
                        v.is_empty(),
                        v.all().map(axiom_text).collect::<Vec<_>>().join("; "),
                    ),
                    Err(e) => ctx.check(&format!("kb {i}: closure"), false, e.to_string()),
                };
                match audit_weak_faithfulness(&e, &kb, cfg) {
                    Ok(v) => ctx.check(
                        &format!("kb {i}: weak violations empty"),
                        v.is_empty(),
                        v.all().map(axiom_text).collect::<Vec<_>>().join("; "),
                    ),
                    Err(e) => ctx.check(&format!("kb {i}: weak faithfulness"), false, e.to_string()),
                };
            }
            other => {
                ctx.check(&format!("kb {i}: synthesis"), false, format!("{other:?}"));
            }
        }
    }
    ctx.finish("conv-closure-weak-faithful", "convex models are closed and weakly faithful")
}

fn conv_not_strong_guarantee(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kb = parse_kb("Language: ELHI-bot-nf\nSubClassOf(A B)\nAssert(B a)").unwrap();
    let mut e = Embedding::new(Method::Conv, 1);
    e.concepts.insert("A".into(), ConceptPayload::Region(HPolyhedron::full(1)));
    e.concepts.insert("B".into(), ConceptPayload::Region(HPolyhedron::full(1)));
    e.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[0])));
    if let Some(v) = ctx.step("model check", semantics::is_model(&e, &kb, &cfg.fm_budget())) {
        ctx.check("the trivial embedding models the KB", v.value, "");
    }
    if let Some(violations) = ctx.step("strong audit", audit_strong_faithfulness(&e, &kb, cfg)) {
        let has_ba = violations.terminological.contains(&Axiom::subclass(
            Concept::name("B"),
            Concept::name("A"),
        ));
        let has_aa = violations.assertional.contains(&Axiom::ConceptAssertion {
            concept: "A".into(),
            individual: "a".into(),
        });
        ctx.check("reversed inclusion violates strong faithfulness", has_ba, "");
        ctx.check("extra assertion violates strong faithfulness", has_aa, "");
        let cert = faithfulness_certificate(
            CertificateKind::NonStrongFaithful,
            &e,
            &kb,
            &violations,
            "the full-space model satisfies non-consequences",
        );
        let ok = cert.reverify(cfg).unwrap_or(false);
        ctx.check("certificate reverifies", ok, "");
        ctx.cert(cert);
    }
    ctx.finish("conv-not-strong-guarantee", "full-space convex model satisfies non-consequences")
}

fn cone_not_strong_guarantee(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kb = parse_kb("Language: ALCp\nSubClassOf(A B)\nAssert(B a)").unwrap();
    let mut e = Embedding::new(Method::Cone, 2);
    let cone = AlCone::new(vec![ConeAxis::Plus, ConeAxis::Full]);
    e.concepts.insert("A".into(), ConceptPayload::Cone(cone.clone()));
    e.concepts.insert("B".into(), ConceptPayload::Cone(cone));
    e.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[1, 1])));
    if let Some(v) = ctx.step("model check", semantics::is_model(&e, &kb, &cfg.fm_budget())) {
        ctx.check("the collapsed embedding models the KB", v.value, "");
    }
    let reversed = Axiom::subclass(Concept::name("B"), Concept::name("A"));
    let extra = Axiom::ConceptAssertion { concept: "A".into(), individual: "a".into() };
    for ax in [&reversed, &extra] {
        let sat = semantics::satisfies(&e, ax, &cfg.fm_budget()).map(|v| v.value).unwrap_or(false);
        let entailed = reasoner::alcp_entails(&kb, ax).unwrap_or(true);
        ctx.check(
            &format!("{} satisfied but not entailed", axiom_text(ax)),
            sat && !entailed,
            "",
        );
    }
    ctx.finish("cone-not-strong-guarantee", "collapsed cone model satisfies non-consequences")
}

fn cone_membership_gap(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let mut e = Embedding::new(Method::Cone, 2);
    e.concepts.insert(
        "A".into(),
        ConceptPayload::Cone(AlCone::new(vec![ConeAxis::Plus, ConeAxis::Plus])),
    );
    e.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[1, -1])));
    let pos = Axiom::ConceptAssertion { concept: "A".into(), individual: "a".into() };
    let sat_pos = semantics::satisfies(&e, &pos, &cfg.fm_budget()).map(|v| v.value).unwrap_or(true);
    ctx.check("the assertion fails", !sat_pos, "second coordinate is negative");
    let neg_cone = e.concept_cone("A").unwrap().polar();
    let in_neg = neg_cone.member(&RVector::from_ints(&[1, -1])).unwrap_or(true);
    ctx.check("its negation fails too", !in_neg, "the polar cone misses the point as well");
    ctx.finish("cone-membership-gap", "a point can avoid both a cone and its polar")
}

fn ball_forced_members(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kb = data_kb(data::BALL_FORCED_KB);
    if let Some(c) = ctx.step("oracle", reasoner::el_consistent(&kb)) {
        ctx.check("KB is satisfiable", c, "");
    }
    let b_a = Axiom::ConceptAssertion { concept: "B".into(), individual: "a".into() };
    let c_a = Axiom::ConceptAssertion { concept: "C".into(), individual: "a".into() };
    for ax in [&b_a, &c_a] {
        let entailed = reasoner::el_entails(&kb, ax).unwrap_or(true);
        ctx.check(&format!("{} is not entailed", axiom_text(ax)), !entailed, "");
    }
    // sampled models: every one satisfies both forced assertions, so every
    // one violates strong faithfulness on them
    let models = sample_models(Method::Elem, &kb, 50, 2, cfg);
    ctx.check("sampled 50 ball models", models.len() == 50, format!("{}", models.len()));
    let mut all_forced = true;
    let mut strong_violations = true;
    for e in &models {
        for ax in [&b_a, &c_a] {
            if !semantics::satisfies(e, ax, &cfg.fm_budget()).map(|v| v.value).unwrap_or(false) {
                all_forced = false;
            }
        }
        if let Ok(v) = audit_strong_faithfulness(e, &kb, cfg) {
            let hit = v.all().any(|ax| {
                matches!(ax, Axiom::ConceptInclusion { rhs: Concept::Name(n), .. } if n == "B" || n == "C")
            });
            if !hit {
                strong_violations = false;
            }
        }
    }
    ctx.check("every model satisfies both assertions", all_forced, "");
    ctx.check("every model violates strong faithfulness on them", strong_violations, "");
    if let Some(e) = models.first() {
        if let Ok(v) = audit_strong_faithfulness(e, &kb, cfg) {
            let cert = faithfulness_certificate(
                CertificateKind::NonStrongFaithful,
                e,
                &kb,
                &v,
                "forced assertions beyond the consequences",
            );
            if cert.reverify(cfg).unwrap_or(false) {
                ctx.cert(cert);
            }
        }
        // weak faithfulness fails only through terminological axioms: the
        // empty nominal ball satisfies the bottom inclusion for `a`, which
        // no satisfiable KB tolerates; each forced assertion alone stays
        // consistent, so no assertional violations appear
        if let Ok(v) = audit_weak_faithfulness(e, &kb, cfg) {
            let forced_encoded = [
                Axiom::ConceptInclusion {
                    lhs: Concept::nominal("a"),
                    rhs: Concept::name("B"),
                    from_assertion: false,
                },
                Axiom::ConceptInclusion {
                    lhs: Concept::nominal("a"),
                    rhs: Concept::name("C"),
                    from_assertion: false,
                },
            ];
            ctx.check(
                "the forced assertions are not weak violations",
                forced_encoded.iter().all(|ax| !v.assertional.contains(ax)),
                "each forced assertion alone is consistent with the KB",
            );
            let nominal_bottom = Axiom::subclass(Concept::nominal("a"), Concept::Bot);
            ctx.check(
                "the nominal bottom inclusion is a weak violation",
                v.terminological.contains(&nominal_bottom),
                "the empty nominal ball satisfies an axiom no model of the KB can",
            );
        }
    }
    // symbolic derivation: containments into two disjoint balls force the
    // nominal ball of `a` (translated by the role vector) to radius zero
    let n_ab = LinExpr::var("|x-cB|");
    let n_ac = LinExpr::var("|x-cC|");
    let n_bc = LinExpr::var("|cB-cC|");
    let (ra, rb, rc) = (LinExpr::var("ra"), LinExpr::var("rb"), LinExpr::var("rc"));
    let hyps = vec![
        Ineq::le(n_ab.clone().plus(&ra).minus(&rb), "translated nominal inside the first ball"),
        Ineq::le(n_ac.clone().plus(&ra).minus(&rc), "translated nominal inside the second ball"),
        Ineq::le(rb.clone().plus(&rc).minus(&n_bc), "the two balls are disjoint"),
        Ineq::le(n_bc.clone().minus(&n_ab).minus(&n_ac), "triangle inequality"),
    ];
    let goal = Ineq::le(ra.scaled(&rint(2)), "2 ra <= 0");
    let ok = check_combination(&hyps, &vec![rint(1); 4], &goal).is_ok();
    ctx.check("forced-empty derivation checks", ok, "weighted sum gives 2 ra <= 0");
    ctx.finish("ball-forced-members", "ball models are forced to satisfy both assertions")
}

fn box2el_composition_leak(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kb = data_kb(data::BOX2EL_COMP_KB);
    let leak = Axiom::subclass(
        Concept::exists(RoleAtom::plain("r1"), Concept::name("C")),
        Concept::name("D"),
    );
    if let Some(c) = ctx.step("oracle", reasoner::el_consistent(&kb)) {
        ctx.check("KB is satisfiable", c, "");
    }
    let entailed = reasoner::el_entails(&kb, &leak).unwrap_or(true);
    ctx.check("the leaked axiom is not entailed", !entailed, axiom_text(&leak));
    let models = sample_models(Method::Box2el, &kb, 50, 2, cfg);
    ctx.check("sampled 50 head/tail models", models.len() == 50, format!("{}", models.len()));
    let mut all_leak = true;
    for e in &models {
        if !semantics::satisfies(e, &leak, &cfg.fm_budget()).map(|v| v.value).unwrap_or(false) {
            all_leak = false;
        }
    }
    ctx.check("every model satisfies the leaked axiom", all_leak, "");
    if let Some(e) = models.first() {
        if let Ok(v) = audit_strong_faithfulness(e, &kb, cfg) {
            let hit = v.terminological.contains(&leak);
            ctx.check("strong audit reports the leak", hit, "");
            let cert = faithfulness_certificate(
                CertificateKind::NonStrongFaithful,
                e,
                &kb,
                &v,
                "composition reading leaks the stronger axiom",
            );
            if cert.reverify(cfg).unwrap_or(false) {
                ctx.cert(cert);
            }
        }
    }
    // symbolic chain per corner: head containment plus the translated
    // containment give the leaked translated containment
    let var = LinExpr::var;
    let lower_chain = {
        let hyps = vec![
            Ineq::le(var("l_D").minus(&var("l_h3")).plus(&var("bC")), "first box lower corner"),
            Ineq::le(var("l_h3").minus(&var("l_h1")), "head containment, lower corner"),
        ];
        let goal = Ineq::le(var("l_D").minus(&var("l_h1")).plus(&var("bC")), "leaked lower corner");
        check_combination(&hyps, &vec![rint(1); 2], &goal).is_ok()
    };
    let upper_chain = {
        let hyps = vec![
            Ineq::le(var("u_h3").minus(&var("bC")).minus(&var("u_D")), "first box upper corner"),
            Ineq::le(var("u_h1").minus(&var("u_h3")), "head containment, upper corner"),
        ];
        let goal = Ineq::le(var("u_h1").minus(&var("bC")).minus(&var("u_D")), "leaked upper corner");
        check_combination(&hyps, &vec![rint(1); 2], &goal).is_ok()
    };
    ctx.check("corner chains check", lower_chain && upper_chain, "both corners compose");
    ctx.finish("box2el-composition-leak", "head/tail models satisfy the stronger consequence")
}

fn ball_disjoint_premises_leak(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kb = data_kb(data::BALL_DISJOINT_KB);
    let leak = Axiom::subclass(
        Concept::and(Concept::name("C"), Concept::name("D")),
        Concept::Bot,
    );
    if let Some(c) = ctx.step("oracle", reasoner::el_consistent(&kb)) {
        ctx.check("KB is satisfiable", c, "");
    }
    let entailed = reasoner::el_entails(&kb, &leak).unwrap_or(true);
    ctx.check("the disjointness is not entailed", !entailed, axiom_text(&leak));
    let models = sample_models(Method::Elem, &kb, 50, 2, cfg);
    ctx.check("sampled 50 ball models", models.len() == 50, format!("{}", models.len()));
    let mut all_leak = true;
    for e in &models {
        if !semantics::satisfies(e, &leak, &cfg.fm_budget()).map(|v| v.value).unwrap_or(false) {
            all_leak = false;
        }
    }
    ctx.check("every model satisfies the disjointness", all_leak, "");
    if let Some(e) = models.first() {
        if let Ok(v) = audit_strong_faithfulness(e, &kb, cfg) {
            ctx.check("strong audit reports it", v.terminological.contains(&leak), "");
        }
    }
    // symbolic chain: both translated containments plus the disjointness of
    // the targets force the translated filler balls apart; translation
    // cancels in the distance, so the fillers themselves are disjoint.
    let hyps = vec![
        Ineq::le(
            LinExpr::var("|cC-r - cA|").plus(&LinExpr::var("rC")).minus(&LinExpr::var("rA")),
            "translated first filler inside A",
        ),
        Ineq::le(
            LinExpr::var("|cD-r - cB|").plus(&LinExpr::var("rD")).minus(&LinExpr::var("rB")),
            "translated second filler inside B",
        ),
        Ineq::le(
            LinExpr::var("rA").plus(&LinExpr::var("rB")).minus(&LinExpr::var("|cA-cB|")),
            "A and B disjoint",
        ),
        Ineq::le(
            LinExpr::var("|cA-cB|")
                .minus(&LinExpr::var("|cC-r - cA|"))
                .minus(&LinExpr::var("|cC-cD|"))
                .minus(&LinExpr::var("|cD-r - cB|")),
            "triangle chain through both translated centres",
        ),
    ];
    let goal = Ineq::le(
        LinExpr::var("rC").plus(&LinExpr::var("rD")).minus(&LinExpr::var("|cC-cD|")),
        "filler balls disjoint",
    );
    let ok = check_combination(&hyps, &vec![rint(1); 4], &goal).is_ok();
    ctx.check("disjointness derivation checks", ok, "translation cancels in the middle distance");
    ctx.finish("ball-disjoint-premises-leak", "ball models force the fillers disjoint")
}

fn conv_strong_faithful_construction(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    let kb = parse_kb("Language: ELHI-bot-nf\nConcepts: A B\nRoles: r\nSubClassOf(A B)").unwrap();
    match conv_strongly_faithful(&kb, cfg) {
        Ok(Some(e)) => {
            if let Some(v) = ctx.step("model check", semantics::is_model(&e, &kb, &cfg.fm_budget())) {
                ctx.check("union model verifies", v.value, "");
            }
            match audit_strong_faithfulness(&e, &kb, cfg) {
                Ok(v) => ctx.check(
                    "no strong violations",
                    v.is_empty(),
                    v.all().map(axiom_text).collect::<Vec<_>>().join("; "),
                ),
                Err(e) => ctx.check("strong audit", false, e.to_string()),
            };
            match audit_entailment_closure(&e, &kb, cfg) {
                Ok(v) => ctx.check("entailment closure holds too", v.is_empty(), ""),
                Err(e) => ctx.check("closure audit", false, e.to_string()),
            };
            match audit_weak_faithfulness(&e, &kb, cfg) {
                Ok(v) => ctx.check("weak faithfulness holds", v.is_empty(), ""),
                Err(e) => ctx.check("weak audit", false, e.to_string()),
            };
        }
        Ok(None) => {
            ctx.check("construction", false, "no strongly faithful union found");
        }
        Err(e) => {
            ctx.check("construction", false, e.to_string());
        }
    }
    ctx.finish(
        "conv-strong-faithful-construction",
        "disjoint-union simplex model is strongly faithful",
    )
}

fn conv_helly_quadruple(cfg: &Config) -> CaseReport {
    let mut ctx = CaseCtx::new(cfg);
    // normalized 4-way disjointness
    let kb = parse_kb(
        "Language: ELHI-bot-nf\nSubClassOf(And(C1 C2) M0)\nSubClassOf(And(M0 C3) M1)\nSubClassOf(And(M1 C4) Bot)",
    );
    let kb = match kb {
        Ok(k) => k,
        Err(e) => {
            ctx.check("parse", false, e.to_string());
            return ctx.finish("conv-helly-quadruple", "setup failed");
        }
    };
    let mut rng = case_rng(cfg, 0x7e11);
    let mut tested = 0;
    let mut helly_holds = true;
    use rand::Rng;
    while tested < 20 {
        // four random planar boxes with an empty common intersection
        let mk = |rng: &mut rand_chacha::ChaCha8Rng, lo: (i64, i64)| {
            crate::audit::box_to_poly(&crate::semantics::int_box(
                &[lo.0, lo.1],
                &[lo.0 + rng.random_range(2..6), lo.1 + rng.random_range(2..6)],
            ))
        };
        let corners = [
            (rng.random_range(-2..0), rng.random_range(-2..0)),
            (rng.random_range(0..3), rng.random_range(-2..0)),
            (rng.random_range(-2..0), rng.random_range(0..3)),
            (rng.random_range(2..5), rng.random_range(2..5)),
        ];
        let boxes = [
            mk(&mut rng, corners[0]),
            mk(&mut rng, corners[1]),
            mk(&mut rng, corners[2]),
            mk(&mut rng, corners[3]),
        ];
        let inter3 = boxes[0].intersect(&boxes[1]).and_then(|p| p.intersect(&boxes[2]));
        let all4 = inter3.clone().and_then(|p| p.intersect(&boxes[3]));
        let Ok(all4) = all4 else { continue };
        if !all4.is_empty(&cfg.fm_budget()).unwrap_or(true) {
            continue; // need the 4-way intersection empty
        }
        let mut e = Embedding::new(Method::Conv, 2);
        for (i, b) in boxes.iter().enumerate() {
            e.concepts.insert(format!("C{}", i + 1), ConceptPayload::Region(b.clone()));
        }
        let x0 = boxes[0].intersect(&boxes[1]).unwrap();
        let x1 = x0.intersect(&boxes[2]).unwrap();
        e.concepts.insert("M0".into(), ConceptPayload::Region(x0));
        e.concepts.insert("M1".into(), ConceptPayload::Region(x1));
        let Ok(ok) = semantics::is_model(&e, &kb, &cfg.fm_budget()) else { continue };
        if !ok.value {
            continue;
        }
        tested += 1;
        // Helly: some triple must already have an empty intersection
        let mut found_triple = None;
        'triples: for i in 0..4 {
            for j in (i + 1)..4 {
                for k in (j + 1)..4 {
                    let meet = boxes[i]
                        .intersect(&boxes[j])
                        .and_then(|p| p.intersect(&boxes[k]));
                    if let Ok(m) = meet {
                        if m.is_empty(&cfg.fm_budget()).unwrap_or(false) {
                            found_triple = Some((i, j, k));
                            break 'triples;
                        }
                    }
                }
            }
        }
        let Some((i, j, k)) = found_triple else {
            helly_holds = false;
            continue;
        };
        // the triple axiom is satisfied by the model but not entailed
        let triple_ax = Axiom::subclass(
            Concept::and(
                Concept::and(Concept::name(&format!("C{}", i + 1)), Concept::name(&format!("C{}", j + 1))),
                Concept::name(&format!("C{}", k + 1)),
            ),
            Concept::Bot,
        );
        let sat = semantics::satisfies(&e, &triple_ax, &cfg.fm_budget())
            .map(|v| v.value)
            .unwrap_or(false);
        let entailed = reasoner::el_entails(&kb, &triple_ax).unwrap_or(true);
        if !sat || entailed {
            helly_holds = false;
        }
    }
    ctx.check("sampled 20 planar models", tested == 20, format!("{tested}"));
    ctx.check(
        "each satisfies a non-entailed triple disjointness",
        helly_holds,
        "an empty triple always exists in the plane",
    );
    ctx.finish("conv-helly-quadruple", "planar models collapse a quadruple to a triple")
}
