use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GitError, Result};
use crate::json::JsonRational;

/// Name of the pullback of an ample bundle from the good moduli space.
pub const L_X: &str = "L_X";
/// Name of the bundle whose semistable locus is the DM locus.
pub const L_DM: &str = "L";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub genus: u32,
    /// Whether the component maps into the Deligne–Mumford locus.
    pub in_dm: bool,
    /// Degree of each tracked bundle on the component; missing names mean 0.
    pub degrees: BTreeMap<String, BigRational>,
}

impl Vertex {
    pub fn new(genus: u32, in_dm: bool) -> Self {
        Vertex { genus, in_dm, degrees: BTreeMap::new() }
    }

    pub fn with_degree(mut self, bundle: &str, deg: BigRational) -> Self {
        self.degrees.insert(bundle.to_string(), deg);
        self
    }

    pub fn degree(&self, bundle: &str) -> BigRational {
        self.degrees.get(bundle).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Node between two components (possibly a loop), with local index `d ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub endpoints: (usize, usize),
    pub index: u32,
}

/// Marking on a component, with local index `e ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Leg {
    pub vertex: usize,
    pub index: u32,
}

/// Dual graph of a twisted marked curve with the degrees of tracked bundles.
/// Vertices are numbered from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCurveGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    legs: Vec<Leg>,
    bundles: Vec<String>,
}

impl TwistedCurveGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, legs: Vec<Leg>, bundles: Vec<String>) -> Result<Self> {
        let g = TwistedCurveGraph { vertices, edges, legs, bundles };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let nv = self.vertices.len();
        if nv == 0 {
            return Err(GitError::input("graph has no vertices"));
        }
        if !self.bundles.iter().any(|b| b == L_X) {
            return Err(GitError::input(format!("tracked bundles must include {L_X:?}")));
        }
        for (i, b) in self.bundles.iter().enumerate() {
            if self.bundles[..i].contains(b) {
                return Err(GitError::input(format!("bundle {b:?} listed twice")));
            }
        }
        for e in &self.edges {
            let (a, b) = e.endpoints;
            if a >= nv || b >= nv {
                return Err(GitError::input(format!("edge ({a},{b}) refers to a missing vertex")));
            }
            if e.index == 0 {
                return Err(GitError::input("node indices must be at least 1"));
            }
        }
        for l in &self.legs {
            if l.vertex >= nv {
                return Err(GitError::input(format!("leg on missing vertex {}", l.vertex)));
            }
            if l.index == 0 {
                return Err(GitError::input("marking indices must be at least 1"));
            }
        }
        for (v, vert) in self.vertices.iter().enumerate() {
            if let Some(name) = vert.degrees.keys().find(|k| !self.bundles.contains(k)) {
                return Err(GitError::input(format!("vertex {v} has a degree for untracked bundle {name:?}")));
            }
            let lcm = self.local_index_lcm(v);
            for (name, d) in &vert.degrees {
                if !lcm.is_multiple_of(d.denom()) {
                    return Err(GitError::input(format!(
                        "vertex {v}: degree of {name:?} has denominator {} not dividing the local index lcm {lcm}",
                        d.denom()
                    )));
                }
            }
            if vert.degree(L_X).is_negative() {
                return Err(GitError::input(format!("vertex {v}: {L_X} must have nonnegative degree")));
            }
        }
        if !self.is_connected() {
            return Err(GitError::input("graph is not connected"));
        }
        Ok(())
    }

    fn local_index_lcm(&self, v: usize) -> BigInt {
        let mut l = BigInt::from(1);
        for e in &self.edges {
            if e.endpoints.0 == v || e.endpoints.1 == v {
                l = l.lcm(&BigInt::from(e.index));
            }
        }
        for leg in &self.legs {
            if leg.vertex == v {
                l = l.lcm(&BigInt::from(leg.index));
            }
        }
        l
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let (a, b) = e.endpoints;
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn bundles(&self) -> &[String] {
        &self.bundles
    }

    pub fn tracks(&self, bundle: &str) -> bool {
        self.bundles.iter().any(|b| b == bundle)
    }

    /// Edge-ends at `v`; a loop contributes two.
    pub fn edge_ends(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.endpoints.0 == v) as usize + (e.endpoints.1 == v) as usize).sum()
    }

    pub fn legs_at(&self, v: usize) -> usize {
        self.legs.iter().filter(|l| l.vertex == v).count()
    }

    /// Arithmetic genus `Σ g_v + E − V + 1`.
    pub fn total_genus(&self) -> i64 {
        self.vertices.iter().map(|v| v.genus as i64).sum::<i64>() + self.edges.len() as i64 - self.vertices.len() as i64
            + 1
    }

    /// The class `β`: total degree of each tracked bundle.
    pub fn class_beta(&self) -> BTreeMap<String, BigRational> {
        self.bundles.iter().map(|b| (b.clone(), self.vertices.iter().map(|v| v.degree(b)).sum())).collect()
    }

    /// Connected subcurve on `keep`; each severed edge becomes a leg on the
    /// kept endpoint with the node's index.
    pub fn subcurve(&self, keep: &[usize]) -> Result<TwistedCurveGraph> {
        let mut new_index = vec![None; self.vertices.len()];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.vertices.len() || new_index[v].is_some() {
                return Err(GitError::input(format!("bad subcurve vertex {v}")));
            }
            new_index[v] = Some(i);
        }
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let mut edges = Vec::new();
        let mut legs: Vec<Leg> =
            self.legs.iter().filter_map(|l| new_index[l.vertex].map(|v| Leg { vertex: v, index: l.index })).collect();
        for e in &self.edges {
            match (new_index[e.endpoints.0], new_index[e.endpoints.1]) {
                (Some(a), Some(b)) => edges.push(Edge { endpoints: (a, b), index: e.index }),
                (Some(a), None) | (None, Some(a)) => legs.push(Leg { vertex: a, index: e.index }),
                (None, None) => {}
            }
        }
        TwistedCurveGraph::new(vertices, edges, legs, self.bundles.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    genus: u32,
    in_dm: bool,
    #[serde(default)]
    degrees: BTreeMap<String, JsonRational>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    #[serde(default)]
    edges: Vec<(usize, usize, u32)>,
    #[serde(default)]
    legs: Vec<(usize, u32)>,
    bundles: Vec<String>,
}

impl Serialize for TwistedCurveGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    genus: v.genus,
                    in_dm: v.in_dm,
                    degrees: v.degrees.iter().map(|(k, d)| (k.clone(), JsonRational(d.clone()))).collect(),
                })
                .collect(),
            edges: self.edges.iter().map(|e| (e.endpoints.0, e.endpoints.1, e.index)).collect(),
            legs: self.legs.iter().map(|l| (l.vertex, l.index)).collect(),
            bundles: self.bundles.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistedCurveGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        TwistedCurveGraph::new(
            j.vertices
                .into_iter()
                .map(|v| Vertex {
                    genus: v.genus,
                    in_dm: v.in_dm,
                    degrees: v.degrees.into_iter().map(|(k, q)| (k, q.0)).collect(),
                })
                .collect(),
            j.edges.into_iter().map(|(a, b, index)| Edge { endpoints: (a, b), index }).collect(),
            j.legs.into_iter().map(|(vertex, index)| Leg { vertex, index }).collect(),
            j.bundles,
        )
        .map_err(serde::de::Error::custom)
    }
}
