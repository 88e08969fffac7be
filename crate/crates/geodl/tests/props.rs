//! Property tests for the library-level invariants that are not already pinned
//! by the unit tests or the acceptance suite.

mod common;

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use proptest::prelude::*;

use geodl::config::Config;
use geodl::geom::{
    ball_subset, AlCone, ConeAxis, HPolyhedron, OpenBall, RVector,
};
use geodl::kb::{
    classical_satisfies, eval_concept, normalize, parse_kb, serialize_kb, Axiom, Concept,
    FiniteInterpretation, KnowledgeBase, LanguageTag, RoleAtom, Signature,
};
use geodl::rat::{rat, Ext};
use geodl::reasoner::{el_entails, finite_countermodel, pattern_chase};

// -- generators ---------------------------------------------------------------

fn arb_basic() -> impl Strategy<Value = Concept> {
    prop_oneof![
        Just(Concept::Top),
        Just(Concept::name("A")),
        Just(Concept::name("B")),
        Just(Concept::name("C")),
        Just(Concept::name("D")),
        Just(Concept::nominal("a")),
    ]
}

fn arb_el_concept() -> impl Strategy<Value = Concept> {
    arb_basic().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Concept::and(x, y)),
            (prop_oneof![Just("r"), Just("s")], inner.clone())
                .prop_map(|(r, c)| Concept::exists(RoleAtom::plain(r), c)),
        ]
    })
}

fn arb_nf_kb() -> impl Strategy<Value = KnowledgeBase> {
    let sig = Signature::new(&["A", "B", "C"], &["r"], &["a", "b"]);
    let language = geodl::kb::enumerate_language(&sig, LanguageTag::EloBotNf).unwrap();
    let n = language.len();
    proptest::collection::vec(0..n, 1..5).prop_map(move |picks| {
        let mut kb = KnowledgeBase::empty(LanguageTag::EloBotNf);
        kb.signature = Signature::new(&["A", "B", "C"], &["r"], &["a", "b"]);
        for p in picks {
            kb.tbox.push(language[p].clone());
        }
        kb
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// parse ∘ serialize is the identity on parsed knowledge bases.
    #[test]
    fn parse_serialize_round_trip(kb in arb_nf_kb()) {
        let text = serialize_kb(&kb);
        let back = parse_kb(&text).unwrap();
        prop_assert_eq!(&back, &kb);
        prop_assert_eq!(serialize_kb(&back), text);
    }

    /// Normalisation output contains only the normal shapes.
    #[test]
    fn normalize_emits_normal_shapes(lhs in arb_el_concept(), rhs in arb_el_concept()) {
        let out = normalize(&[Axiom::subclass(lhs, rhs)]).unwrap();
        for ax in &out {
            let Axiom::ConceptInclusion { lhs, rhs, .. } = ax else {
                prop_assert!(false, "unexpected axiom kind");
                continue;
            };
            let basic = |c: &Concept| c.is_basic();
            let lhs_ok = basic(lhs)
                || matches!(lhs, Concept::And(a, b) if basic(a) && basic(b))
                || matches!(lhs, Concept::Exists(_, f) if basic(f));
            let rhs_ok = basic(rhs) || matches!(rhs, Concept::Exists(_, f) if basic(f));
            let both_exists = matches!(lhs, Concept::Exists(_, _)) && matches!(rhs, Concept::Exists(_, _));
            let conj_exists = matches!(lhs, Concept::And(_, _)) && matches!(rhs, Concept::Exists(_, _));
            prop_assert!(lhs_ok && rhs_ok && !both_exists && !conj_exists, "non-normal output {ax:?}");
        }
    }

    /// Fourier–Motzkin projection is membership-sound: projecting a member
    /// of the polyhedron lands in the projection.
    #[test]
    fn projection_membership_soundness(seed in 0u64..500) {
        let mut rng = rand_seeded(seed);
        let dim = 3;
        let p = common::random_bounded_poly(&mut rng, dim, 8);
        let budget = Config::default().fm_budget();
        let keep = vec![0usize, 2];
        let projected = p.project(&keep, &budget).unwrap();
        for v in common::vertices(&p) {
            let shadow = RVector::new(keep.iter().map(|&k| v.get(k).clone()).collect());
            prop_assert!(projected.member(&shadow).unwrap());
        }
    }

    /// Open-ball containment is transitive whenever both containments hold.
    #[test]
    fn ball_subset_transitive(
        a in arb_grid_ball(), b in arb_grid_ball(), c in arb_grid_ball()
    ) {
        if ball_subset(&a, &b).unwrap() && ball_subset(&b, &c).unwrap() {
            prop_assert!(ball_subset(&a, &c).unwrap());
        }
    }

    /// Propositional entailment is monotone in the KB.
    #[test]
    fn alcp_entailment_monotone(picks in proptest::collection::vec(0usize..12, 1..4), extra in 0usize..12) {
        let pool = alcp_pool();
        let mut kb = KnowledgeBase::empty(LanguageTag::AlcP);
        kb.signature = Signature::new(&["A", "B", "C"], &[], &["a"]);
        for p in &picks {
            kb.tbox.push(pool[*p].clone());
        }
        let mut bigger = kb.clone();
        bigger.tbox.push(pool[extra].clone());
        let queries = [
            Axiom::subclass(Concept::name("A"), Concept::name("B")),
            Axiom::subclass(Concept::name("B"), Concept::not(Concept::name("C"))),
            Axiom::ConceptAssertion { concept: "C".into(), individual: "a".into() },
        ];
        for q in &queries {
            let small = geodl::reasoner::alcp_entails(&kb, q).unwrap();
            let large = geodl::reasoner::alcp_entails(&bigger, q).unwrap();
            prop_assert!(!small || large, "entailment lost when the KB grew");
        }
    }
}

fn rand_seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand_chacha::rand_core::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn arb_grid_ball() -> impl Strategy<Value = OpenBall> {
    (-8i64..8, -8i64..8, 0i64..10).prop_map(|(x, y, r)| {
        OpenBall::new(
            RVector::new(vec![rat(x, 2), rat(y, 2)]),
            Ext::Fin(rat(r, 2)),
        )
        .unwrap()
    })
}

fn alcp_pool() -> Vec<Axiom> {
    let names = ["A", "B", "C"];
    let mut pool = Vec::new();
    for l in names {
        for r in names {
            pool.push(Axiom::subclass(Concept::name(l), Concept::name(r)));
        }
    }
    for l in names {
        pool.push(Axiom::subclass(Concept::name(l), Concept::not(Concept::name("C"))));
    }
    pool
}

/// Brute-force evaluator for the classical semantics, written directly from
/// the truth tables (no sharing with the library's recursive evaluator).
fn brute_eval(i: &FiniteInterpretation, c: &Concept, e: usize) -> bool {
    match c {
        Concept::Top => true,
        Concept::Bot => false,
        Concept::Name(n) => i.concept_ext.get(n).map(|s| s.contains(&e)).unwrap_or(false),
        Concept::Nominal(a) => i.ind_map.get(a) == Some(&e),
        Concept::Not(x) => !brute_eval(i, x, e),
        Concept::And(x, y) => brute_eval(i, x, e) && brute_eval(i, y, e),
        Concept::Or(x, y) => brute_eval(i, x, e) || brute_eval(i, y, e),
        Concept::Exists(r, f) => {
            let pairs = i.role_ext.get(&r.name).cloned().unwrap_or_default();
            (0..i.domain.len()).any(|other| {
                let edge = if r.inverse { (other, e) } else { (e, other) };
                pairs.contains(&edge) && brute_eval(i, f, other)
            })
        }
        Concept::Forall(r, f) => {
            let pairs = i.role_ext.get(&r.name).cloned().unwrap_or_default();
            (0..i.domain.len()).all(|other| {
                let edge = if r.inverse { (other, e) } else { (e, other) };
                !pairs.contains(&edge) || brute_eval(i, f, other)
            })
        }
    }
}

/// Exhaustive agreement of the concept evaluator with the brute-force one
/// over every interpretation with at most three elements and two names.
#[test]
fn classical_evaluator_agrees_exhaustively() {
    let concepts = [
        Concept::name("A"),
        Concept::name("B"),
        Concept::and(Concept::name("A"), Concept::name("B")),
        Concept::or(Concept::name("A"), Concept::not(Concept::name("B"))),
        Concept::exists(RoleAtom::plain("r"), Concept::name("A")),
        Concept::exists(RoleAtom::inv("r"), Concept::name("B")),
        Concept::Forall(RoleAtom::plain("r"), Box::new(Concept::name("B"))),
        Concept::nominal("a"),
    ];
    for n in 1..=3usize {
        for a_bits in 0u32..(1 << n) {
            for b_bits in 0u32..(1 << n) {
                // sample the role extensions rather than all 2^9 for n = 3
                let role_samples: Vec<u32> = if n < 3 {
                    (0..(1u32 << (n * n))).collect()
                } else {
                    (0..(1u32 << 9)).step_by(7).collect()
                };
                for r_bits in role_samples {
                    let interp = FiniteInterpretation {
                        domain: (0..n).map(|i| format!("e{i}")).collect(),
                        concept_ext: BTreeMap::from([
                            (
                                "A".to_string(),
                                (0..n).filter(|i| a_bits >> i & 1 == 1).collect::<BTreeSet<_>>(),
                            ),
                            (
                                "B".to_string(),
                                (0..n).filter(|i| b_bits >> i & 1 == 1).collect::<BTreeSet<_>>(),
                            ),
                        ]),
                        role_ext: BTreeMap::from([(
                            "r".to_string(),
                            (0..n * n)
                                .filter(|c| r_bits >> c & 1 == 1)
                                .map(|c| (c / n, c % n))
                                .collect::<BTreeSet<_>>(),
                        )]),
                        ind_map: BTreeMap::from([("a".to_string(), 0)]),
                    };
                    for c in &concepts {
                        let lib = eval_concept(&interp, c);
                        for e in 0..n {
                            assert_eq!(
                                lib.contains(&e),
                                brute_eval(&interp, c, e),
                                "disagreement on {c:?} at element {e} in {interp:?}"
                            );
                        }
                    }
                    // axiom-level agreement on an inclusion
                    let ax = Axiom::subclass(concepts[2].clone(), concepts[3].clone());
                    let lib = classical_satisfies(&interp, &ax);
                    let brute = (0..n).all(|e| !brute_eval(&interp, &concepts[2], e) || brute_eval(&interp, &concepts[3], e));
                    assert_eq!(lib, brute);
                }
            }
        }
    }
}

/// Normalisation preserves entailment of original-signature inclusions,
/// cross-checked with the bounded model searcher.
#[test]
fn normalize_preserves_entailment() {
    use rand::Rng;
    let mut rng = rand_seeded(42);
    let sig = Signature::new(&["A", "B", "C", "D"], &["r"], &[]);
    for _ in 0..40 {
        // random (possibly nested) EL axioms over four names
        let mut kb = KnowledgeBase::empty(LanguageTag::EloBotNf);
        kb.signature = sig.clone();
        let basic = |rng: &mut rand_chacha::ChaCha8Rng| -> Concept {
            match rng.random_range(0..5) {
                0 => Concept::name("A"),
                1 => Concept::name("B"),
                2 => Concept::name("C"),
                3 => Concept::name("D"),
                _ => Concept::Top,
            }
        };
        let complex = |rng: &mut rand_chacha::ChaCha8Rng| -> Concept {
            match rng.random_range(0..4) {
                0 => Concept::and(basic(rng), basic(rng)),
                1 => Concept::exists(RoleAtom::plain("r"), basic(rng)),
                2 => Concept::exists(
                    RoleAtom::plain("r"),
                    Concept::and(basic(rng), basic(rng)),
                ),
                _ => basic(rng),
            }
        };
        let n_axioms = rng.random_range(1..4);
        let mut raw = Vec::new();
        for _ in 0..n_axioms {
            raw.push(Axiom::subclass(complex(&mut rng), complex(&mut rng)));
        }
        let normalized = normalize(&raw).unwrap();
        let mut nf_kb = kb.clone();
        nf_kb.tbox = normalized;
        for ax in &nf_kb.tbox {
            geodl::kb::collect_signature(&mut nf_kb.signature, ax);
        }

        // entailment of original-signature inclusions must agree; the raw
        // side is decided by bounded refutation (the only oracle available
        // for nested axioms), the normalized side by saturation
        let mut raw_kb = kb.clone();
        raw_kb.tbox = raw;
        for (l, r) in [("A", "B"), ("B", "C"), ("C", "D"), ("A", "D")] {
            let query = Axiom::subclass(Concept::name(l), Concept::name(r));
            let nf_says = el_entails(&nf_kb, &query).unwrap();
            let counter = finite_countermodel(&raw_kb, &query, 3).unwrap();
            match (nf_says, counter) {
                (true, Some(m)) => panic!(
                    "normalized KB entails {query:?} but the raw KB has countermodel {m:?}\nraw: {raw_kb:?}"
                ),
                (false, None) => panic!(
                    "normalized KB drops {query:?} with no bounded countermodel\nraw: {raw_kb:?}"
                ),
                _ => {}
            }
        }
    }
}

/// The chase fixpoint does not depend on the order of the pattern axioms.
#[test]
fn chase_is_order_independent() {
    let text = "Language: patterns-full\nPattern(Hierarchy r s)\nPattern(Symmetry r)\nPattern(Composition r s t)\nAssert(r a b)\nAssert(s b c)";
    let kb = parse_kb(text).unwrap();
    let base = pattern_chase(&kb).unwrap();
    // all permutations of the three patterns
    let perms = [
        [0usize, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for perm in perms {
        let mut shuffled = kb.clone();
        let patterns: Vec<Axiom> = kb.tbox.clone();
        shuffled.tbox = perm.iter().map(|&i| patterns[i].clone()).collect();
        let again = pattern_chase(&shuffled).unwrap();
        assert_eq!(base.closure, again.closure);
        assert_eq!(base.consistent, again.consistent);
    }
}

/// Strong faithfulness implies weak: an instance with no strong violations
/// has no weak ones either.
#[test]
fn strong_faithfulness_subsumes_weak() {
    let cfg = Config::default();
    let kb = parse_kb("Language: ELHI-bot-nf\nSubClassOf(A B)\nAssert(A a)").unwrap();
    let e = geodl::audit::synth_model(geodl::semantics::Method::Conv, &kb, &cfg)
        .unwrap()
        .expect("synthesizable");
    let strong = geodl::audit::audit_strong_faithfulness(&e, &kb, &cfg).unwrap();
    let weak = geodl::audit::audit_weak_faithfulness(&e, &kb, &cfg).unwrap();
    if strong.is_empty() {
        assert!(weak.is_empty(), "strongly faithful instance with weak violations");
    }
    // and on the trivial full-space model, which does violate strong
    // faithfulness, every weak violation is also a strong one
    let mut full = geodl::semantics::Embedding::new(geodl::semantics::Method::Conv, 1);
    full.concepts.insert("A".into(), geodl::semantics::ConceptPayload::Region(HPolyhedron::full(1)));
    full.concepts.insert("B".into(), geodl::semantics::ConceptPayload::Region(HPolyhedron::full(1)));
    full.individuals.insert(
        "a".into(),
        geodl::semantics::IndPayload::Point(RVector::from_ints(&[0])),
    );
    let strong = geodl::audit::audit_strong_faithfulness(&full, &kb, &cfg).unwrap();
    let weak = geodl::audit::audit_weak_faithfulness(&full, &kb, &cfg).unwrap();
    for ax in weak.all() {
        assert!(
            strong.all().any(|s| s == ax),
            "weak violation {ax:?} missing from the strong list"
        );
    }
}

/// The cone meet is the greatest lower bound, exhaustively up to three
/// dimensions.
#[test]
fn cone_lattice_exhaustive_small_dims() {
    let axes = [ConeAxis::Full, ConeAxis::Plus, ConeAxis::Minus, ConeAxis::Zero];
    let cones_of_dim = |d: usize| -> Vec<AlCone> {
        let mut out = vec![vec![]];
        for _ in 0..d {
            let mut next = Vec::new();
            for prefix in &out {
                for &a in &axes {
                    let mut v = prefix.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(AlCone::new).collect()
    };
    for d in 1..=3usize {
        let cones = cones_of_dim(d);
        for x in &cones {
            for y in &cones {
                let m = x.meet(y).unwrap();
                assert!(m.leq(x).unwrap() && m.leq(y).unwrap());
                for z in &cones {
                    if z.leq(x).unwrap() && z.leq(y).unwrap() {
                        assert!(z.leq(&m).unwrap(), "meet is not the glb at {x:?} {y:?} {z:?}");
                    }
                }
            }
        }
    }
}

/// Cross-validation of the inverse-fragment saturation against the bounded
/// searcher, mirroring the treatment of the nominal fragment in the
/// acceptance suite.
#[test]
fn elhi_oracle_cross_validation() {
    use rand::Rng;
    let mut rng = rand_seeded(77);
    let mut checked = 0usize;
    // one-role instances exercise the inverse machinery cheaply; a smaller
    // batch of two-role instances covers role interaction
    let rounds: [(&[&str], usize, usize); 2] = [(&["r"], 250, 3), (&["r", "s"], 25, 2)];
    for (roles, kbs, queries) in rounds {
        let sig = Signature::new(&["A", "B"], roles, &["a"]);
        let language = geodl::kb::enumerate_language(&sig, LanguageTag::ElhiBotNf).unwrap();
        for _ in 0..kbs {
            let mut kb = KnowledgeBase::empty(LanguageTag::ElhiBotNf);
            kb.signature = sig.clone();
            for _ in 0..rng.random_range(1..5usize) {
                let ax = language[rng.random_range(0..language.len())].clone();
                if matches!(ax, Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. }) {
                    kb.abox.push(ax);
                } else {
                    kb.tbox.push(ax);
                }
            }
            for _ in 0..queries {
                let query = language[rng.random_range(0..language.len())].clone();
                let entailed = el_entails(&kb, &query).unwrap();
                let counter = finite_countermodel(&kb, &query, 3).unwrap();
                checked += 1;
                match (entailed, counter) {
                    (true, Some(m)) => panic!(
                        "entailed but refuted: kb={kb:?}\nquery={query:?}\nmodel={m:?}"
                    ),
                    (false, None) => panic!(
                        "not entailed but unrefuted at bound 3: kb={kb:?}\nquery={query:?}"
                    ),
                    _ => {}
                }
            }
        }
    }
    assert_eq!(checked, 800);
}
