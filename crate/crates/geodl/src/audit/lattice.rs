//! The implication lattice over the properties, and its coherence check on
//! property matrices.
//!
//! An edge `X -> Y` means a method with property `X` must have property `Y`.
//! Guarantees imply abilities; strong faithfulness implies weak; every
//! KB-scoped model property implies its ABox and TBox projections; strong
//! faithfulness ability implies full expressiveness; all abilities (whose
//! definitions presuppose a model of every satisfiable KB) imply
//! completeness; full KB-expressiveness implies the scoped expressiveness
//! properties and completeness. One implication (full ABox-expressiveness to
//! strong ABox-faithfulness ability) holds only for empty TBoxes and is
//! encoded as conditional: it is never enforced against a matrix.
//!
//! For finite languages two collapses are added: being able to be entailed
//! (at any scope) coincides with completeness, and full KB-expressiveness
//! coincides with strong KB-faithfulness ability. The guarantee conjunction
//! rule (`forall` KB-X holds iff both scoped versions do) is checked when
//! the participating rows are present.

use serde::Serialize;

use crate::semantics::Method;

use super::properties::{Cell, Mode, PropertyId, PropertyMatrix, Scope};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: PropertyId,
    pub to: PropertyId,
    /// `None` for unconditional edges; conditional edges are informational
    /// and skipped by the matrix check.
    pub condition: Option<&'static str>,
}

/// The implication edges for arbitrary (possibly infinite) languages.
pub fn general_edges() -> Vec<Edge> {
    let mut edges = Vec::new();
    let mut push = |from: PropertyId, to: PropertyId| {
        edges.push(Edge { from, to, condition: None });
    };
    type Fam = fn(Scope, Mode) -> PropertyId;
    let families: [Fam; 3] = [
        PropertyId::Entailed,
        PropertyId::WeakFaithful,
        PropertyId::StrongFaithful,
    ];
    for fam in families {
        for scope in Scope::ALL {
            // guarantee implies ability
            push(fam(scope, Mode::Guarantee), fam(scope, Mode::Ability));
            // every ability presupposes a model of every satisfiable KB
            push(fam(scope, Mode::Ability), PropertyId::Completeness);
        }
        for mode in [Mode::Ability, Mode::Guarantee] {
            // KB scope projects onto both parts
            push(fam(Scope::Kb, mode), fam(Scope::ABox, mode));
            push(fam(Scope::Kb, mode), fam(Scope::TBox, mode));
        }
    }
    for scope in Scope::ALL {
        for mode in [Mode::Ability, Mode::Guarantee] {
            // strong implies weak
            push(
                PropertyId::StrongFaithful(scope, mode),
                PropertyId::WeakFaithful(scope, mode),
            );
        }
        // strong faithfulness ability implies full expressiveness
        push(
            PropertyId::StrongFaithful(scope, Mode::Ability),
            PropertyId::FullyExpressive(scope),
        );
    }
    push(PropertyId::FullyExpressive(Scope::Kb), PropertyId::FullyExpressive(Scope::ABox));
    push(PropertyId::FullyExpressive(Scope::Kb), PropertyId::FullyExpressive(Scope::TBox));
    push(PropertyId::FullyExpressive(Scope::Kb), PropertyId::Completeness);
    edges.push(Edge {
        from: PropertyId::FullyExpressive(Scope::ABox),
        to: PropertyId::StrongFaithful(Scope::ABox, Mode::Ability),
        condition: Some("holds when the TBox is empty"),
    });
    edges
}

/// Extra equivalences that hold for finite languages, as edge pairs.
pub fn finite_edges() -> Vec<Edge> {
    let mut edges = Vec::new();
    let mut both = |a: PropertyId, b: PropertyId| {
        edges.push(Edge { from: a, to: b, condition: None });
        edges.push(Edge { from: b, to: a, condition: None });
    };
    for scope in Scope::ALL {
        both(PropertyId::Entailed(scope, Mode::Ability), PropertyId::Completeness);
    }
    both(
        PropertyId::FullyExpressive(Scope::Kb),
        PropertyId::StrongFaithful(Scope::Kb, Mode::Ability),
    );
    edges
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeViolation {
    pub method: String,
    pub from: String,
    pub to: String,
    pub detail: String,
}

/// Resolves a cell, applying the finite-language aliases when the row is
/// absent from the matrix.
fn lookup(matrix: &PropertyMatrix, prop: PropertyId, method: Method, finite: bool) -> Option<Cell> {
    if let Some(c) = matrix.cell(prop, method) {
        return Some(c.clone());
    }
    if finite {
        match prop {
            PropertyId::Entailed(_, Mode::Ability) => {
                return matrix.cell(PropertyId::Completeness, method).cloned()
            }
            PropertyId::FullyExpressive(Scope::Kb) => {
                return matrix
                    .cell(PropertyId::StrongFaithful(Scope::Kb, Mode::Ability), method)
                    .cloned()
            }
            _ => {}
        }
    }
    None
}

/// Checks a property matrix against the implication lattice; returns every
/// cell pair with a positive source and a negative target, plus violations
/// of the guarantee conjunction rule.
pub fn lattice_check(matrix: &PropertyMatrix, finite: bool) -> Vec<LatticeViolation> {
    let mut edges = general_edges();
    if finite {
        edges.extend(finite_edges());
    }
    let mut out = Vec::new();
    for method in matrix.methods.iter().copied() {
        for edge in &edges {
            if edge.condition.is_some() {
                continue;
            }
            let Some(from) = lookup(matrix, edge.from, method, finite) else { continue };
            let Some(to) = lookup(matrix, edge.to, method, finite) else { continue };
            if from.as_positive() && to == Cell::No {
                out.push(LatticeViolation {
                    method: method.as_str().into(),
                    from: edge.from.as_string(),
                    to: edge.to.as_string(),
                    detail: format!(
                        "`{}` holds but implied `{}` is marked no",
                        edge.from, edge.to
                    ),
                });
            }
        }
        // guarantee conjunction: forall KB-X iff forall ABox-X and TBox-X
        type Fam = fn(Scope, Mode) -> PropertyId;
        let families: [Fam; 3] = [
            PropertyId::Entailed,
            PropertyId::WeakFaithful,
            PropertyId::StrongFaithful,
        ];
        for fam in families {
            let a = lookup(matrix, fam(Scope::ABox, Mode::Guarantee), method, finite);
            let t = lookup(matrix, fam(Scope::TBox, Mode::Guarantee), method, finite);
            let k = lookup(matrix, fam(Scope::Kb, Mode::Guarantee), method, finite);
            if let (Some(a), Some(t), Some(k)) = (a, t, k) {
                if a.as_positive() && t.as_positive() && k == Cell::No {
                    out.push(LatticeViolation {
                        method: method.as_str().into(),
                        from: fam(Scope::ABox, Mode::Guarantee).as_string(),
                        to: fam(Scope::Kb, Mode::Guarantee).as_string(),
                        detail: "both scoped guarantees hold but the KB guarantee is marked no"
                            .into(),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| (&a.method, &a.from, &a.to).cmp(&(&b.method, &b.from, &b.to)));
    out.dedup();
    out
}
