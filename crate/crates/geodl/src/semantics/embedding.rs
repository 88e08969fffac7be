//! Embedding payloads: what each method assigns to individuals, concepts
//! (and nominals) and roles.

use std::collections::BTreeMap;

use crate::geom::{AffineDiagMap, AlCone, BandStack, BoxRegion, HPolyhedron, OpenBall, RVector};

use super::{Method, SemError};

/// Payload of an individual name. Ball/box/point-bump payloads double as the
/// nominal `{a}` payload for the methods that embed nominals like concepts.
#[derive(Debug, Clone, PartialEq)]
pub enum IndPayload {
    /// A plain position (convex, cone, affine-box and band methods).
    Point(RVector),
    /// The nominal ball of `{a}` (ball methods).
    Ball(OpenBall),
    /// The nominal box of `{a}` (translated-box method).
    Box(BoxRegion),
    /// Position plus nominal bump (head/tail box method); the nominal box is
    /// the volume-zero box at the position.
    PointBump { point: RVector, bump: RVector },
    /// Base position and translational bump (relation box-pair method).
    BaseBump { base: RVector, bump: RVector },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConceptPayload {
    /// Convex region as an H-polyhedron.
    Region(HPolyhedron),
    /// Axis-aligned cone.
    Cone(AlCone),
    /// Open ball.
    Ball(OpenBall),
    /// Closed box.
    Box(BoxRegion),
    /// Box plus bump vector.
    BoxBump { bx: BoxRegion, bump: RVector },
}

#[derive(Debug, Clone, PartialEq)]
pub enum RolePayload {
    /// Convex region in the doubled space.
    Region(HPolyhedron),
    /// Finite set of ordered vector pairs.
    Pairs(Vec<(RVector, RVector)>),
    /// Translation vector.
    Vector(RVector),
    /// Diagonal affine transformation.
    Affine(AffineDiagMap),
    /// Head and tail boxes.
    HeadTail { head: BoxRegion, tail: BoxRegion },
    /// The two relation boxes (first/second argument position).
    BoxPair { first: BoxRegion, second: BoxRegion },
    /// Per-dimension planar slices in the doubled space.
    Band(BandStack),
}

/// A method-tagged assignment of payloads to signature symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub method: Method,
    pub dim: usize,
    pub individuals: BTreeMap<String, IndPayload>,
    pub concepts: BTreeMap<String, ConceptPayload>,
    pub roles: BTreeMap<String, RolePayload>,
}

impl Embedding {
    pub fn new(method: Method, dim: usize) -> Self {
        Embedding {
            method,
            dim,
            individuals: BTreeMap::new(),
            concepts: BTreeMap::new(),
            roles: BTreeMap::new(),
        }
    }

    pub(crate) fn missing(kind: &str, name: &str) -> SemError {
        SemError::MissingPayload { kind: kind.into(), name: name.into() }
    }

    pub fn ind_point(&self, name: &str) -> Result<&RVector, SemError> {
        match self.individuals.get(name) {
            Some(IndPayload::Point(p)) => Ok(p),
            Some(IndPayload::PointBump { point, .. }) => Ok(point),
            Some(IndPayload::BaseBump { base, .. }) => Ok(base),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("individual", name)),
        }
    }

    pub fn ind_ball(&self, name: &str) -> Result<&OpenBall, SemError> {
        match self.individuals.get(name) {
            Some(IndPayload::Ball(b)) => Ok(b),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("individual", name)),
        }
    }

    pub fn ind_box(&self, name: &str) -> Result<&BoxRegion, SemError> {
        match self.individuals.get(name) {
            Some(IndPayload::Box(b)) => Ok(b),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("individual", name)),
        }
    }

    pub fn ind_bump(&self, name: &str) -> Result<&RVector, SemError> {
        match self.individuals.get(name) {
            Some(IndPayload::PointBump { bump, .. }) | Some(IndPayload::BaseBump { bump, .. }) => {
                Ok(bump)
            }
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("individual", name)),
        }
    }

    pub fn concept_region(&self, name: &str) -> Result<&HPolyhedron, SemError> {
        match self.concepts.get(name) {
            Some(ConceptPayload::Region(p)) => Ok(p),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("concept", name)),
        }
    }

    pub fn concept_cone(&self, name: &str) -> Result<&AlCone, SemError> {
        match self.concepts.get(name) {
            Some(ConceptPayload::Cone(c)) => Ok(c),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("concept", name)),
        }
    }

    pub fn concept_ball(&self, name: &str) -> Result<&OpenBall, SemError> {
        match self.concepts.get(name) {
            Some(ConceptPayload::Ball(b)) => Ok(b),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("concept", name)),
        }
    }

    pub fn concept_box(&self, name: &str) -> Result<&BoxRegion, SemError> {
        match self.concepts.get(name) {
            Some(ConceptPayload::Box(b)) => Ok(b),
            Some(ConceptPayload::BoxBump { bx, .. }) => Ok(bx),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("concept", name)),
        }
    }

    pub fn concept_bump(&self, name: &str) -> Result<&RVector, SemError> {
        match self.concepts.get(name) {
            Some(ConceptPayload::BoxBump { bump, .. }) => Ok(bump),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("concept", name)),
        }
    }

    pub fn role_region(&self, name: &str) -> Result<&HPolyhedron, SemError> {
        match self.roles.get(name) {
            Some(RolePayload::Region(p)) => Ok(p),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("role", name)),
        }
    }

    pub fn role_pairs(&self, name: &str) -> Result<&[(RVector, RVector)], SemError> {
        match self.roles.get(name) {
            Some(RolePayload::Pairs(p)) => Ok(p),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("role", name)),
        }
    }

    pub fn role_vector(&self, name: &str) -> Result<&RVector, SemError> {
        match self.roles.get(name) {
            Some(RolePayload::Vector(v)) => Ok(v),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("role", name)),
        }
    }

    pub fn role_affine(&self, name: &str) -> Result<&AffineDiagMap, SemError> {
        match self.roles.get(name) {
            Some(RolePayload::Affine(t)) => Ok(t),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("role", name)),
        }
    }

    pub fn role_head_tail(&self, name: &str) -> Result<(&BoxRegion, &BoxRegion), SemError> {
        match self.roles.get(name) {
            Some(RolePayload::HeadTail { head, tail }) => Ok((head, tail)),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("role", name)),
        }
    }

    pub fn role_box_pair(&self, name: &str) -> Result<(&BoxRegion, &BoxRegion), SemError> {
        match self.roles.get(name) {
            Some(RolePayload::BoxPair { first, second }) => Ok((first, second)),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("role", name)),
        }
    }

    pub fn role_band(&self, name: &str) -> Result<&BandStack, SemError> {
        match self.roles.get(name) {
            Some(RolePayload::Band(b)) => Ok(b),
            Some(_) => Err(SemError::PayloadKind { name: name.into() }),
            None => Err(Self::missing("role", name)),
        }
    }

    /// Checks structural invariants: payload kinds match the method, cone
    /// individuals are non-zero, dimensions agree.
    pub fn validate(&self) -> Result<(), SemError> {
        use Method::*;
        let d = self.dim;
        let bad = |name: &str| Err(SemError::PayloadKind { name: name.into() });
        for (name, p) in &self.individuals {
            match (self.method, p) {
                (Conv | Boxel | Expr, IndPayload::Point(v)) if v.dim() == d => {}
                (Cone, IndPayload::Point(v)) if v.dim() == d => {
                    if v.is_zero() {
                        return Err(SemError::Invalid(format!(
                            "cone individual `{name}` must be non-zero"
                        )));
                    }
                }
                (Elem | Emel, IndPayload::Ball(b)) if b.dim() == d => {}
                (Elbe, IndPayload::Box(b)) if b.dim() == d => {}
                (Box2el, IndPayload::PointBump { point, bump })
                    if point.dim() == d && bump.dim() == d => {}
                (Boxe, IndPayload::BaseBump { base, bump })
                    if base.dim() == d && bump.dim() == d => {}
                _ => return bad(name),
            }
        }
        for (name, p) in &self.concepts {
            match (self.method, p) {
                (Conv, ConceptPayload::Region(r)) if r.dim() == d => {}
                (Cone, ConceptPayload::Cone(c)) if c.dim() == d => {}
                (Elem | Emel, ConceptPayload::Ball(b)) if b.dim() == d => {}
                (Elbe | Boxel | Boxe, ConceptPayload::Box(b)) if b.dim() == d => {}
                (Box2el, ConceptPayload::BoxBump { bx, bump })
                    if bx.dim() == d && bump.dim() == d => {}
                _ => return bad(name),
            }
        }
        for (name, p) in &self.roles {
            match (self.method, p) {
                (Conv, RolePayload::Region(r)) if r.dim() == 2 * d => {}
                (Cone, RolePayload::Pairs(ps))
                    if ps.iter().all(|(a, b)| a.dim() == d && b.dim() == d) => {}
                (Elem | Emel | Elbe, RolePayload::Vector(v)) if v.dim() == d => {}
                (Boxel, RolePayload::Affine(t)) if t.dim() == d => {}
                (Box2el, RolePayload::HeadTail { head, tail })
                    if head.dim() == d && tail.dim() == d => {}
                (Boxe, RolePayload::BoxPair { first, second })
                    if first.dim() == d && second.dim() == d => {}
                (Expr, RolePayload::Band(b)) if b.dim() == d => {}
                _ => return bad(name),
            }
        }
        Ok(())
    }
}
