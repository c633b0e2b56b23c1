use std::fmt;

use crate::exactalg::OrderedField;
use crate::surfaces::{standard_jet, SurfaceKind};

use super::descriptor::{BaseSurface, BlowupRecord, Parent, SurfaceDescriptor};

/// Topological type of the minimal resolution's real surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResolutionClass {
    /// Connected sum of `g` tori.
    Orientable { genus: usize },
    /// Connected sum of `g` real projective planes.
    Nonorientable { genus: usize },
}

impl fmt::Display for ResolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolutionClass::Orientable { genus } => write!(f, "orientable genus {genus}"),
            ResolutionClass::Nonorientable { genus } => write!(f, "nonorientable genus {genus}"),
        }
    }
}

/// Euler characteristic, resolution class and the singularity orders `e`
/// (one `A_{e−1}^−` point per record with `e ≥ 2`), sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomeoInvariants {
    pub euler: i64,
    pub resolution: ResolutionClass,
    pub singularities: Vec<usize>,
}

impl HomeoInvariants {
    /// Whether every singularity type occurs at most once.
    pub fn types_distinct(&self) -> bool {
        self.singularities.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Display for HomeoInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sing: Vec<String> = self
            .singularities
            .iter()
            .map(|e| format!("A{}-", e - 1))
            .collect();
        write!(f, "(euler {}, {}, {{{}}})", self.euler, self.resolution, sing.join(", "))
    }
}

pub fn descriptor_invariants<F>(d: &SurfaceDescriptor<F>) -> HomeoInvariants {
    let n = d.records.len() as i64;
    let total: usize = d.records.iter().map(|r| r.order).sum();
    let resolution = match (d.base, d.records.is_empty()) {
        (BaseSurface::Sphere, true) => ResolutionClass::Orientable { genus: 0 },
        (BaseSurface::Torus, true) => ResolutionClass::Orientable { genus: 1 },
        (BaseSurface::Sphere, false) => ResolutionClass::Nonorientable { genus: total },
        (BaseSurface::Torus | BaseSurface::Klein, _) => ResolutionClass::Nonorientable { genus: 2 + total },
    };
    let mut singularities: Vec<usize> = d.records.iter().map(|r| r.order).filter(|&e| e >= 2).collect();
    singularities.sort_unstable();
    HomeoInvariants {
        euler: d.base.euler() - n,
        resolution,
        singularities,
    }
}

/// Whether all records sit on the base and the base is a sphere or torus.
pub fn is_flat<F>(d: &SurfaceDescriptor<F>) -> bool {
    d.base != BaseSurface::Klein && d.records.iter().all(|r| r.parent == Parent::Base)
}

/// A flat descriptor with the same invariants.
///
/// Flat sphere descriptors and the bare torus are returned unchanged. Otherwise
/// the result is a sphere blown up at standard points: first the orders
/// `e ≥ 2` in descending order, then as many order-1 records as the
/// resolution genus requires.
pub fn descriptor_normalize<F: OrderedField>(d: &SurfaceDescriptor<F>) -> SurfaceDescriptor<F> {
    let keep = match d.base {
        BaseSurface::Sphere => is_flat(d),
        BaseSurface::Torus => d.records.is_empty(),
        BaseSurface::Klein => false,
    };
    if keep {
        return d.clone();
    }
    let inv = descriptor_invariants(d);
    let genus = match inv.resolution {
        ResolutionClass::Nonorientable { genus } => genus,
        ResolutionClass::Orientable { .. } => unreachable!("only bare sphere and torus are orientable"),
    };
    let mut orders = inv.singularities.clone();
    orders.reverse();
    let ones = genus - orders.iter().sum::<usize>();
    orders.extend(std::iter::repeat(1).take(ones));
    let records = orders
        .iter()
        .enumerate()
        .map(|(k, &e)| BlowupRecord {
            parent: Parent::Base,
            order: e,
            center: Some(standard_jet(SurfaceKind::Sphere, k + 1, e)),
        })
        .collect();
    SurfaceDescriptor {
        base: BaseSurface::Sphere,
        records,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    /// Some singularity type repeats, so equal invariants need not mean isomorphic.
    HypothesisNotMet,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Isomorphic => "isomorphic",
            Verdict::NotIsomorphic => "not-isomorphic",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Isomorphic exactly when the homeomorphism invariants agree, provided
/// each surface has pairwise distinct singularity types.
pub fn isomorphism_decide<F>(d1: &SurfaceDescriptor<F>, d2: &SurfaceDescriptor<F>) -> Verdict {
    let (a, b) = (descriptor_invariants(d1), descriptor_invariants(d2));
    if !a.types_distinct() || !b.types_distinct() {
        Verdict::HypothesisNotMet
    } else if a == b {
        Verdict::Isomorphic
    } else {
        Verdict::NotIsomorphic
    }
}
