use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::OrderedField;
use crate::surfaces::{jets_mutually_distant, Jet, SurfaceKind};

/// The nonsingular surface a descriptor starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseSurface {
    Sphere,
    Torus,
    Klein,
}

impl BaseSurface {
    pub fn name(self) -> &'static str {
        match self {
            BaseSurface::Sphere => "sphere",
            BaseSurface::Torus => "torus",
            BaseSurface::Klein => "klein",
        }
    }

    pub fn euler(self) -> i64 {
        match self {
            BaseSurface::Sphere => 2,
            BaseSurface::Torus | BaseSurface::Klein => 0,
        }
    }

    /// The surface kind carrying base jets, if any.
    pub fn kind(self) -> Option<SurfaceKind> {
        match self {
            BaseSurface::Sphere => Some(SurfaceKind::Sphere),
            BaseSurface::Torus => Some(SurfaceKind::Torus),
            BaseSurface::Klein => None,
        }
    }
}

impl fmt::Display for BaseSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a blow-up center lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parent {
    Base,
    /// On the exceptional locus created by this earlier record.
    Record(usize),
}

/// One weighted blow-up of order `e`, optionally with its center on the base.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowupRecord<F> {
    pub parent: Parent,
    pub order: usize,
    pub center: Option<Jet<F>>,
}

impl<F> BlowupRecord<F> {
    pub fn on_base(order: usize) -> Self {
        BlowupRecord {
            parent: Parent::Base,
            order,
            center: None,
        }
    }

    pub fn on_record(parent: usize, order: usize) -> Self {
        BlowupRecord {
            parent: Parent::Record(parent),
            order,
            center: None,
        }
    }
}

/// A Dantesque surface: a base surface and the weighted blow-ups performed on it.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceDescriptor<F> {
    pub base: BaseSurface,
    pub records: Vec<BlowupRecord<F>>,
}

impl<F: OrderedField> SurfaceDescriptor<F> {
    pub fn new(base: BaseSurface, records: Vec<BlowupRecord<F>>) -> Result<Self> {
        let d = SurfaceDescriptor { base, records };
        d.validate()?;
        Ok(d)
    }

    /// Blow-ups of the given orders at unspecified distinct base points.
    pub fn flat(base: BaseSurface, orders: &[usize]) -> Self {
        SurfaceDescriptor {
            base,
            records: orders.iter().map(|&e| BlowupRecord::on_base(e)).collect(),
        }
    }

    pub fn orders(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.order).collect()
    }

    /// Orders positive, parents in range and acyclic, and base centers
    /// of the right order, on the base surface and mutually distant.
    pub fn validate(&self) -> Result<()> {
        let n = self.records.len();
        let mut centers = Vec::new();
        for (i, r) in self.records.iter().enumerate() {
            if r.order == 0 {
                return Err(Error::InvalidDescriptor(format!("record {i} has order 0")));
            }
            match r.parent {
                Parent::Record(j) if j >= n => {
                    return Err(Error::InvalidDescriptor(format!("record {i} refers to missing record {j}")));
                }
                Parent::Record(_) if r.center.is_some() => {
                    return Err(Error::InvalidDescriptor(format!(
                        "record {i} lies on an exceptional locus and cannot carry a base jet"
                    )));
                }
                _ => {}
            }
            if let Some(c) = &r.center {
                if Some(c.surface()) != self.base.kind() {
                    return Err(Error::InvalidDescriptor(format!("record {i} has a center off the {} base", self.base)));
                }
                if c.order() != r.order {
                    return Err(Error::InvalidDescriptor(format!(
                        "record {i} has order {} but its center has order {}",
                        r.order,
                        c.order()
                    )));
                }
                c.validate()
                    .map_err(|v| Error::InvalidDescriptor(format!("record {i} has an invalid center: {v:?}")))?;
                centers.push(c.clone());
            }
        }
        if !jets_mutually_distant(&centers)? {
            return Err(Error::NotDistant);
        }
        forest_build(self).map(|_| ())
    }
}

/// The partial order on blow-up centers: record `j` sits above `i` when its
/// center maps onto the exceptional locus of `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupForest {
    parents: Vec<Option<usize>>,
}

impl BlowupForest {
    pub fn nodes(&self) -> usize {
        self.parents.len()
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parents[i]
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.nodes()).filter(|&i| self.parents[i].is_none()).collect()
    }

    pub fn trees(&self) -> usize {
        self.parents.iter().filter(|p| p.is_none()).count()
    }

    /// Number of edges `s = nodes − trees`.
    pub fn edges(&self) -> usize {
        self.nodes() - self.trees()
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.nodes()).filter(|&j| self.parents[j] == Some(i)).collect()
    }

    /// `Q_i ≤ Q_j`: `i` lies on the path from `j` down to its root.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let mut k = Some(j);
        while let Some(c) = k {
            if c == i {
                return true;
            }
            k = self.parents[c];
        }
        false
    }

    pub fn depth(&self, i: usize) -> usize {
        let mut d = 0;
        let mut k = self.parents[i];
        while let Some(c) = k {
            d += 1;
            k = self.parents[c];
        }
        d
    }
}

/// The forest of parent links; fails on cycles or dangling references.
pub fn forest_build<F>(d: &SurfaceDescriptor<F>) -> Result<BlowupForest> {
    let n = d.records.len();
    let mut parents = Vec::with_capacity(n);
    for (i, r) in d.records.iter().enumerate() {
        parents.push(match r.parent {
            Parent::Base => None,
            Parent::Record(j) if j < n => Some(j),
            Parent::Record(j) => {
                return Err(Error::InvalidDescriptor(format!("record {i} refers to missing record {j}")));
            }
        });
    }
    // 0 unvisited, 1 on the current path, 2 finished
    let mut state = vec![0u8; n];
    for start in 0..n {
        let mut path = Vec::new();
        let mut k = Some(start);
        while let Some(c) = k {
            match state[c] {
                2 => break,
                1 => return Err(Error::CyclicReference(c)),
                _ => {
                    state[c] = 1;
                    path.push(c);
                    k = parents[c];
                }
            }
        }
        for c in path {
            state[c] = 2;
        }
    }
    Ok(BlowupForest { parents })
}
