//! Deterministic, duplicate-free enumeration of every axiom expressible in
//! a finite language tag over a signature.
//!
//! The audits rely on the languages being finite: normal-form tags enumerate
//! exactly the normal shapes (no nested concepts), pattern tags enumerate the
//! template instantiations over distinct roles plus assertions. Propositional
//! concept inclusions are not a finite language and are rejected.
//!
//! The emitted set, in order:
//! * normal-form tags: `L ⊑ R` for `L` in names ∪ nominals ∪ {⊤} and `R` in
//!   names ∪ nominals ∪ {⊥}; `L1 ⊓ L2 ⊑ R` over ordered pairs `L1 < L2`;
//!   `∃ρ.L ⊑ R`; `L ⊑ ∃ρ.F` with fillers `F` in names ∪ nominals; then role
//!   inclusions / compositions where the tag admits them. Assertions are
//!   represented by their nominal encodings (so they are not emitted twice);
//!   tags without nominals emit native assertions instead.
//! * pattern tags: symmetry and asymmetry per role, inversion / hierarchy /
//!   exclusion per ordered pair of distinct roles, intersection (and
//!   composition for the full tag) per ordered triple of distinct roles,
//!   then concept and role assertions.

use super::syntax::*;

/// Whether a tag can be enumerated exhaustively.
pub fn language_is_finite(tag: LanguageTag) -> bool {
    !matches!(tag, LanguageTag::AlcP)
}

fn basics_lhs(sig: &Signature, tag: LanguageTag) -> Vec<Concept> {
    let mut out = vec![Concept::Top];
    out.extend(sig.concepts.iter().map(|n| Concept::Name(n.clone())));
    if tag.allows_nominals() {
        out.extend(sig.individuals.iter().map(|a| Concept::Nominal(a.clone())));
    }
    out
}

fn basics_rhs(sig: &Signature, tag: LanguageTag) -> Vec<Concept> {
    let mut out = vec![Concept::Bot];
    out.extend(sig.concepts.iter().map(|n| Concept::Name(n.clone())));
    if tag.allows_nominals() {
        out.extend(sig.individuals.iter().map(|a| Concept::Nominal(a.clone())));
    }
    out
}

fn fillers_rhs(sig: &Signature, tag: LanguageTag) -> Vec<Concept> {
    let mut out: Vec<Concept> = sig.concepts.iter().map(|n| Concept::Name(n.clone())).collect();
    if tag.allows_nominals() {
        out.extend(sig.individuals.iter().map(|a| Concept::Nominal(a.clone())));
    }
    out
}

fn role_atoms(sig: &Signature, tag: LanguageTag) -> Vec<RoleAtom> {
    let mut out: Vec<RoleAtom> = sig.roles.iter().map(|r| RoleAtom::plain(r)).collect();
    if tag.allows_inverse() {
        out.extend(sig.roles.iter().map(|r| RoleAtom::inv(r)));
    }
    out
}

/// Enumerates every axiom of the finite language `tag` over `sig`.
pub fn enumerate_language(sig: &Signature, tag: LanguageTag) -> Result<Vec<Axiom>, KbError> {
    if !language_is_finite(tag) {
        return Err(KbError::NotFinite(tag.as_str().to_string()));
    }
    let mut out = Vec::new();
    if tag.is_el_family() {
        let lhs = basics_lhs(sig, tag);
        let rhs = basics_rhs(sig, tag);
        let fillers = fillers_rhs(sig, tag);
        let roles = role_atoms(sig, tag);
        // L ⊑ R
        for l in &lhs {
            for r in &rhs {
                out.push(Axiom::subclass(l.clone(), r.clone()));
            }
        }
        // L1 ⊓ L2 ⊑ R over strictly ordered pairs
        for i in 0..lhs.len() {
            for j in (i + 1)..lhs.len() {
                for r in &rhs {
                    out.push(Axiom::subclass(
                        Concept::and(lhs[i].clone(), lhs[j].clone()),
                        r.clone(),
                    ));
                }
            }
        }
        // ∃ρ.L ⊑ R
        for rho in &roles {
            for l in &lhs {
                for r in &rhs {
                    out.push(Axiom::subclass(
                        Concept::Exists(rho.clone(), Box::new(l.clone())),
                        r.clone(),
                    ));
                }
            }
        }
        // L ⊑ ∃ρ.F
        for l in &lhs {
            for rho in &roles {
                for f in &fillers {
                    out.push(Axiom::subclass(
                        l.clone(),
                        Concept::Exists(rho.clone(), Box::new(f.clone())),
                    ));
                }
            }
        }
        // role axioms
        match tag {
            LanguageTag::ElhiBotNf => {
                for r in &sig.roles {
                    for s in &sig.roles {
                        out.push(Axiom::RoleInclusion {
                            sub: RoleAtom::plain(r),
                            sup: RoleAtom::plain(s),
                        });
                        out.push(Axiom::RoleInclusion {
                            sub: RoleAtom::plain(r),
                            sup: RoleAtom::inv(s),
                        });
                    }
                }
            }
            LanguageTag::ElhoCompBotNf => {
                for r in &sig.roles {
                    for s in &sig.roles {
                        out.push(Axiom::RoleInclusion {
                            sub: RoleAtom::plain(r),
                            sup: RoleAtom::plain(s),
                        });
                    }
                }
                for r in &sig.roles {
                    for s in &sig.roles {
                        for t in &sig.roles {
                            out.push(Axiom::RoleComposition {
                                first: r.clone(),
                                second: s.clone(),
                                sup: t.clone(),
                            });
                        }
                    }
                }
            }
            _ => {}
        }
        // Tags without nominals carry assertions natively.
        if !tag.allows_nominals() {
            push_assertions(sig, &mut out);
        }
    } else {
        // pattern tags
        for r in &sig.roles {
            out.push(Axiom::Pattern(Pattern { kind: PatternKind::Symmetry, roles: vec![r.clone()] }));
        }
        for r in &sig.roles {
            out.push(Axiom::Pattern(Pattern { kind: PatternKind::Asymmetry, roles: vec![r.clone()] }));
        }
        for kind in [PatternKind::Inversion, PatternKind::Hierarchy, PatternKind::Exclusion] {
            for r in &sig.roles {
                for s in &sig.roles {
                    if r != s {
                        out.push(Axiom::Pattern(Pattern {
                            kind,
                            roles: vec![r.clone(), s.clone()],
                        }));
                    }
                }
            }
        }
        let triple_kinds: &[PatternKind] = if tag == LanguageTag::PatternsFull {
            &[PatternKind::Intersection, PatternKind::Composition]
        } else {
            &[PatternKind::Intersection]
        };
        for &kind in triple_kinds {
            for r in &sig.roles {
                for s in &sig.roles {
                    for t in &sig.roles {
                        if r != s && r != t && s != t {
                            out.push(Axiom::Pattern(Pattern {
                                kind,
                                roles: vec![r.clone(), s.clone(), t.clone()],
                            }));
                        }
                    }
                }
            }
        }
        push_assertions(sig, &mut out);
    }
    Ok(out)
}

fn push_assertions(sig: &Signature, out: &mut Vec<Axiom>) {
    for c in &sig.concepts {
        for a in &sig.individuals {
            out.push(Axiom::ConceptAssertion { concept: c.clone(), individual: a.clone() });
        }
    }
    for r in &sig.roles {
        for a in &sig.individuals {
            for b in &sig.individuals {
                out.push(Axiom::RoleAssertion {
                    role: r.clone(),
                    subject: a.clone(),
                    object: b.clone(),
                });
            }
        }
    }
}

/// Closed-form count of [`enumerate_language`] for normal-form tags, used as
/// an independent cross-check in tests.
pub fn normal_form_count(sig: &Signature, tag: LanguageTag) -> Option<usize> {
    if !tag.is_el_family() {
        return None;
    }
    let nc = sig.concepts.len();
    let ni = if tag.allows_nominals() { sig.individuals.len() } else { 0 };
    let nr = sig.roles.len();
    let l = nc + ni + 1; // + top
    let r = nc + ni + 1; // + bottom
    let f = nc + ni;
    let atoms = if tag.allows_inverse() { 2 * nr } else { nr };
    let mut total = l * r + (l * (l - 1) / 2) * r + atoms * l * r + l * atoms * f;
    match tag {
        LanguageTag::ElhiBotNf => total += 2 * nr * nr,
        LanguageTag::ElhoCompBotNf => total += nr * nr + nr * nr * nr,
        _ => {}
    }
    if !tag.allows_nominals() {
        total += nc * sig.individuals.len() + nr * sig.individuals.len() * sig.individuals.len();
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn counts_match_the_closed_form() {
        let sig = Signature::new(&["A", "B"], &["r"], &["a"]);
        for tag in [LanguageTag::EloBotNf, LanguageTag::ElhiBotNf, LanguageTag::ElhoCompBotNf] {
            let axioms = enumerate_language(&sig, tag).unwrap();
            assert_eq!(axioms.len(), normal_form_count(&sig, tag).unwrap(), "{tag:?}");
        }
    }

    #[test]
    fn no_duplicates_and_deterministic() {
        let sig = Signature::new(&["A", "B"], &["r", "s"], &["a", "b"]);
        for tag in [
            LanguageTag::EloBotNf,
            LanguageTag::ElhiBotNf,
            LanguageTag::ElhoCompBotNf,
            LanguageTag::PatternsNoComp,
            LanguageTag::PatternsFull,
        ] {
            let axioms = enumerate_language(&sig, tag).unwrap();
            let set: BTreeSet<String> = axioms.iter().map(|a| format!("{a:?}")).collect();
            assert_eq!(set.len(), axioms.len(), "duplicates under {tag:?}");
            assert_eq!(axioms, enumerate_language(&sig, tag).unwrap());
        }
    }

    #[test]
    fn simple_inclusions_are_present() {
        let sig = Signature::new(&["A", "B"], &[], &[]);
        let axioms = enumerate_language(&sig, LanguageTag::EloBotNf).unwrap();
        for (l, r) in [("A", "B"), ("B", "A"), ("A", "A")] {
            assert!(axioms.contains(&Axiom::subclass(Concept::name(l), Concept::name(r))));
        }
        assert!(axioms.contains(&Axiom::subclass(Concept::name("A"), Concept::Bot)));
    }

    #[test]
    fn pattern_language_without_roles_is_empty() {
        let sig = Signature::new(&["A"], &[], &["a"]);
        let axioms = enumerate_language(&sig, LanguageTag::PatternsNoComp).unwrap();
        // no roles: no patterns, no role assertions; concept assertions remain
        assert!(axioms.iter().all(|a| matches!(a, Axiom::ConceptAssertion { .. })));
        let sig2 = Signature::new(&[], &[], &[]);
        assert!(enumerate_language(&sig2, LanguageTag::PatternsNoComp).unwrap().is_empty());
    }

    #[test]
    fn two_role_pattern_census() {
        let sig = Signature::new(&[], &["r", "s"], &[]);
        let axioms = enumerate_language(&sig, LanguageTag::PatternsNoComp).unwrap();
        // 2 symmetry + 2 asymmetry + 2 each of inversion/hierarchy/exclusion
        assert_eq!(axioms.len(), 10);
        let full = enumerate_language(&sig, LanguageTag::PatternsFull).unwrap();
        assert_eq!(full.len(), 10); // triples need three distinct roles
        let sig3 = Signature::new(&[], &["r", "s", "t"], &[]);
        let full3 = enumerate_language(&sig3, LanguageTag::PatternsFull).unwrap();
        // 3 sym + 3 asym + 6*3 pairs + 6 intersection + 6 composition
        assert_eq!(full3.len(), 3 + 3 + 18 + 6 + 6);
    }

    #[test]
    fn alcp_is_not_finite() {
        let sig = Signature::new(&["A"], &[], &[]);
        assert!(matches!(
            enumerate_language(&sig, LanguageTag::AlcP),
            Err(KbError::NotFinite(_))
        ));
    }

    #[test]
    fn every_emitted_axiom_validates() {
        let sig = Signature::new(&["A", "B"], &["r", "s"], &["a", "b"]);
        for tag in [
            LanguageTag::EloBotNf,
            LanguageTag::ElhiBotNf,
            LanguageTag::ElhoCompBotNf,
            LanguageTag::PatternsNoComp,
            LanguageTag::PatternsFull,
        ] {
            let mut kb = KnowledgeBase::empty(tag);
            kb.signature = sig.clone();
            for ax in enumerate_language(&sig, tag).unwrap() {
                if matches!(ax, Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. }) {
                    kb.abox.push(ax);
                } else {
                    kb.tbox.push(ax);
                }
            }
            kb.validate().unwrap_or_else(|e| panic!("{tag:?}: {e}"));
        }
    }
}
