//! EL normalisation: rewrites EL-family concept inclusions into the four
//! normal shapes (`A ⊑ B`, `A1 ⊓ A2 ⊑ B`, `∃r.A ⊑ B`, `A ⊑ ∃r.B`, plus
//! bottom right-hand sides), introducing fresh names `X0, X1, ...`
//! deterministically. The output is a conservative extension: it is
//! equivalent to the input over the original signature.

use super::syntax::*;

struct Normalizer {
    counter: usize,
    out: Vec<Axiom>,
}

impl Normalizer {
    fn fresh(&mut self) -> Concept {
        let name = format!("X{}", self.counter);
        self.counter += 1;
        Concept::Name(name)
    }

    fn basic(c: &Concept) -> bool {
        c.is_basic()
    }

    /// One rewriting step; returns `None` when the axiom is already normal.
    fn step(&mut self, lhs: Concept, rhs: Concept) -> Result<Option<Vec<(Concept, Concept)>>, KbError> {
        use Concept::*;
        if !lhs.is_el() || !rhs.is_el() {
            let offender = if lhs.is_el() { &rhs } else { &lhs };
            return Err(KbError::NonElConstructor(format!("{offender:?}")));
        }
        // Trivial simplifications: bottom on the left, top on the right.
        if lhs == Bot || rhs == Top {
            return Ok(Some(vec![]));
        }
        match (&lhs, &rhs) {
            // Split conjunctions on the right.
            (_, And(d1, d2)) => Ok(Some(vec![
                (lhs.clone(), (**d1).clone()),
                (lhs, (**d2).clone()),
            ])),
            // Complex filler on a right existential.
            (_, Exists(r, f)) if !Self::basic(f) => {
                let x = self.fresh();
                Ok(Some(vec![
                    (lhs, Exists(r.clone(), Box::new(x.clone()))),
                    (x, (**f).clone()),
                ]))
            }
            // Complex filler on a left existential.
            (Exists(r, f), _) if !Self::basic(f) => {
                let x = self.fresh();
                Ok(Some(vec![
                    ((**f).clone(), x.clone()),
                    (Exists(r.clone(), Box::new(x)), rhs),
                ]))
            }
            // Conjunction on the left: name a complex conjunct, or insert an
            // intermediate when the right side is existential.
            (And(c1, c2), _) => {
                if !Self::basic(c1) {
                    let x = self.fresh();
                    Ok(Some(vec![
                        ((**c1).clone(), x.clone()),
                        (Concept::and(x, (**c2).clone()), rhs),
                    ]))
                } else if !Self::basic(c2) {
                    let x = self.fresh();
                    Ok(Some(vec![
                        ((**c2).clone(), x.clone()),
                        (Concept::and((**c1).clone(), x), rhs),
                    ]))
                } else if matches!(rhs, Exists(_, _)) {
                    // A1 ⊓ A2 ⊑ ∃r.B needs an intermediate name.
                    let x = self.fresh();
                    Ok(Some(vec![(lhs, x.clone()), (x, rhs)]))
                } else {
                    Ok(None)
                }
            }
            // Basic ⊑ basic / basic ⊑ ∃r.B / ∃r.A ⊑ basic are normal.
            (l, r) if Self::basic(l) && Self::basic(r) => Ok(None),
            (l, Exists(_, f)) if Self::basic(l) && Self::basic(f) => Ok(None),
            (Exists(_, f), r) if Self::basic(f) && Self::basic(r) => Ok(None),
            _ => {
                // Both sides complex in a way not covered: name the left side.
                let x = self.fresh();
                Ok(Some(vec![(lhs, x.clone()), (x, rhs)]))
            }
        }
    }

    fn normalize_inclusion(
        &mut self,
        lhs: Concept,
        rhs: Concept,
        from_assertion: bool,
    ) -> Result<(), KbError> {
        let mut queue = vec![(lhs, rhs)];
        while let Some((l, r)) = queue.pop() {
            match self.step(l.clone(), r.clone())? {
                None => self.out.push(Axiom::ConceptInclusion { lhs: l, rhs: r, from_assertion }),
                Some(subgoals) => {
                    // Push in reverse so rewriting proceeds left to right.
                    for goal in subgoals.into_iter().rev() {
                        queue.push(goal);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Normalises a list of TBox axioms. Non-concept axioms (role inclusions,
/// compositions, assertions) pass through untouched; patterns are rejected.
pub fn normalize(tbox: &[Axiom]) -> Result<Vec<Axiom>, KbError> {
    let mut n = Normalizer { counter: 0, out: Vec::new() };
    for ax in tbox {
        match ax {
            Axiom::ConceptInclusion { lhs, rhs, from_assertion } => {
                n.normalize_inclusion(lhs.clone(), rhs.clone(), *from_assertion)?;
            }
            Axiom::Pattern(_) => {
                return Err(KbError::NonElConstructor("pattern axiom".into()));
            }
            other => n.out.push(other.clone()),
        }
    }
    Ok(n.out)
}

/// Normalises a KB's TBox in place (assertions are untouched); the fresh
/// names are added to the signature.
pub fn normalize_kb(kb: &KnowledgeBase) -> Result<KnowledgeBase, KbError> {
    let mut out = kb.clone();
    out.tbox = normalize(&kb.tbox)?;
    let mut sig = out.signature.clone();
    for ax in &out.tbox {
        super::parse::collect_signature(&mut sig, ax);
    }
    out.signature = sig;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf_shape(ax: &Axiom) -> bool {
        match ax {
            Axiom::ConceptInclusion { lhs, rhs, .. } => {
                let basic = |c: &Concept| c.is_basic();
                let lhs_ok = basic(lhs)
                    || matches!(lhs, Concept::And(a, b) if basic(a) && basic(b))
                    || matches!(lhs, Concept::Exists(_, f) if basic(f));
                let rhs_ok = basic(rhs) || matches!(rhs, Concept::Exists(_, f) if basic(f));
                let both_exists =
                    matches!(lhs, Concept::Exists(_, _)) && matches!(rhs, Concept::Exists(_, _));
                let conj_exists =
                    matches!(lhs, Concept::And(_, _)) && matches!(rhs, Concept::Exists(_, _));
                lhs_ok && rhs_ok && !both_exists && !conj_exists
            }
            _ => true,
        }
    }

    #[test]
    fn nested_filler_is_split() {
        // A ⊑ ∃r.(B ⊓ C)  ~>  A ⊑ ∃r.X0, X0 ⊑ B, X0 ⊑ C
        let ax = Axiom::subclass(
            Concept::name("A"),
            Concept::exists(
                RoleAtom::plain("r"),
                Concept::and(Concept::name("B"), Concept::name("C")),
            ),
        );
        let out = normalize(&[ax]).unwrap();
        let expected = vec![
            Axiom::subclass(
                Concept::name("A"),
                Concept::exists(RoleAtom::plain("r"), Concept::name("X0")),
            ),
            Axiom::subclass(Concept::name("X0"), Concept::name("B")),
            Axiom::subclass(Concept::name("X0"), Concept::name("C")),
        ];
        assert_eq!(out, expected);
    }

    #[test]
    fn triple_conjunction_is_left_nested() {
        // (A ⊓ B) ⊓ C ⊑ D  ~>  A ⊓ B ⊑ X0, X0 ⊓ C ⊑ D
        let ax = Axiom::subclass(
            Concept::and(Concept::and(Concept::name("A"), Concept::name("B")), Concept::name("C")),
            Concept::name("D"),
        );
        let out = normalize(&[ax]).unwrap();
        let expected = vec![
            Axiom::subclass(Concept::and(Concept::name("A"), Concept::name("B")), Concept::name("X0")),
            Axiom::subclass(Concept::and(Concept::name("X0"), Concept::name("C")), Concept::name("D")),
        ];
        assert_eq!(out, expected);
    }

    #[test]
    fn already_normal_is_untouched() {
        let ax = Axiom::subclass(Concept::name("A"), Concept::name("B"));
        assert_eq!(normalize(&[ax.clone()]).unwrap(), vec![ax]);
    }

    #[test]
    fn output_contains_only_normal_shapes() {
        let ax = Axiom::subclass(
            Concept::exists(
                RoleAtom::plain("r"),
                Concept::exists(RoleAtom::plain("s"), Concept::and(Concept::name("A"), Concept::Top)),
            ),
            Concept::exists(RoleAtom::plain("r"), Concept::and(Concept::name("B"), Concept::name("C"))),
        );
        let out = normalize(&[ax]).unwrap();
        assert!(out.iter().all(nf_shape), "non-normal output: {out:?}");
    }

    #[test]
    fn non_el_is_rejected() {
        let ax = Axiom::subclass(Concept::not(Concept::name("A")), Concept::name("B"));
        assert!(matches!(normalize(&[ax]), Err(KbError::NonElConstructor(_))));
    }

    #[test]
    fn fresh_names_are_deterministic() {
        let mk = || {
            normalize(&[
                Axiom::subclass(
                    Concept::name("A"),
                    Concept::exists(RoleAtom::plain("r"), Concept::and(Concept::name("B"), Concept::name("C"))),
                ),
                Axiom::subclass(
                    Concept::name("D"),
                    Concept::exists(RoleAtom::plain("r"), Concept::and(Concept::name("B"), Concept::name("D"))),
                ),
            ])
            .unwrap()
        };
        assert_eq!(mk(), mk());
    }
}
