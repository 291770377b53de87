use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Serialize;

use super::ConstructionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Injection,
    Bijection,
    FiniteToOne,
    /// Coincides with `FiniteToOne` on finite domains; kept as a label only.
    DedekindFiniteToOne,
    Surjection,
}

/// A finite map together with the property it claims to have.
///
/// `codomain` must be supplied for bijections and surjections; `fiber_bound`
/// is the declared maximum fiber size for the finite-to-one kinds.
#[derive(Clone, Debug, Serialize)]
pub struct MapWitness<D, C> {
    pub kind: MapKind,
    pub domain: String,
    pub codomain: String,
    pub graph: Vec<(D, C)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codomain_elems: Option<Vec<C>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_bound: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapStats {
    pub domain_size: usize,
    pub image_size: usize,
    pub max_fiber: usize,
}

impl<D, C> MapWitness<D, C>
where
    D: Ord + Clone + Debug,
    C: Ord + Clone + Debug,
{
    pub fn new(kind: MapKind, domain: impl Into<String>, codomain: impl Into<String>) -> Self {
        MapWitness {
            kind,
            domain: domain.into(),
            codomain: codomain.into(),
            graph: Vec::new(),
            codomain_elems: None,
            fiber_bound: None,
        }
    }

    pub fn with_graph(mut self, graph: Vec<(D, C)>) -> Self {
        self.graph = graph;
        self
    }

    pub fn with_codomain(mut self, elems: Vec<C>) -> Self {
        self.codomain_elems = Some(elems);
        self
    }

    pub fn with_fiber_bound(mut self, bound: usize) -> Self {
        self.fiber_bound = Some(bound);
        self
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn get(&self, d: &D) -> Option<&C> {
        self.graph.iter().find(|(k, _)| k == d).map(|(_, v)| v)
    }

    /// Fibers keyed by image value; each fiber lists its preimages in domain order.
    pub fn fibers(&self) -> BTreeMap<&C, Vec<&D>> {
        let mut fibers: BTreeMap<&C, Vec<&D>> = BTreeMap::new();
        for (d, c) in &self.graph {
            fibers.entry(c).or_default().push(d);
        }
        for f in fibers.values_mut() {
            f.sort();
        }
        fibers
    }

    /// Re-checks the declared kind against the graph.
    pub fn verify(&self) -> Result<MapStats, ConstructionError> {
        let mut seen: BTreeMap<&D, ()> = BTreeMap::new();
        for (d, _) in &self.graph {
            if seen.insert(d, ()).is_some() {
                return Err(ConstructionError::NotAFunction(format!("{d:?}")));
            }
        }
        let fibers = self.fibers();
        let max_fiber = fibers.values().map(Vec::len).max().unwrap_or(0);
        let stats = MapStats {
            domain_size: self.graph.len(),
            image_size: fibers.len(),
            max_fiber,
        };
        let injective = || -> Result<(), ConstructionError> {
            match fibers.values().find(|f| f.len() > 1) {
                Some(f) => Err(ConstructionError::NotInjective(
                    format!("{:?}", f[0]),
                    format!("{:?}", f[1]),
                )),
                None => Ok(()),
            }
        };
        let surjective = || -> Result<(), ConstructionError> {
            let cod =
                self.codomain_elems
                    .as_ref()
                    .ok_or_else(|| ConstructionError::Precondition {
                        t: self.codomain.clone(),
                        reason: "codomain elements not supplied".into(),
                    })?;
            match cod.iter().find(|c| !fibers.contains_key(c)) {
                Some(c) => Err(ConstructionError::NotSurjective(format!("{c:?}"))),
                None => Ok(()),
            }
        };
        match self.kind {
            MapKind::Injection => injective()?,
            MapKind::Bijection => {
                injective()?;
                surjective()?;
                let cod = self.codomain_elems.as_ref().map_or(0, Vec::len);
                if let Some((_, c)) = self
                    .graph
                    .iter()
                    .find(|(_, c)| !self.codomain_elems.as_ref().is_some_and(|e| e.contains(c)))
                {
                    return Err(ConstructionError::Precondition {
                        t: format!("{c:?}"),
                        reason: format!("image outside the declared codomain of size {cod}"),
                    });
                }
            }
            MapKind::Surjection => surjective()?,
            MapKind::FiniteToOne | MapKind::DedekindFiniteToOne => {
                if let Some(bound) = self.fiber_bound {
                    if let Some((c, f)) = fibers.iter().find(|(_, f)| f.len() > bound) {
                        return Err(ConstructionError::FiberBound {
                            value: format!("{c:?}"),
                            size: f.len(),
                            bound,
                        });
                    }
                }
            }
        }
        Ok(stats)
    }
}
