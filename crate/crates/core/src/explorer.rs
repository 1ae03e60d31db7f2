//! Breadth-first exploration of the exchange graph.
//!
//! A cluster variable is identified by its g-vector and F-polynomial, which
//! determine it through the separation formula. A non-labeled seed is
//! identified by its sorted variable keys together with the exchange matrix
//! relabeled by the same sorting permutation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::compat::VariableRef;
use crate::error::{Error, Result};
use crate::laurent::MultiPoly;
use crate::matrix::{ExchangeMatrix, IntMat};
use crate::pattern::{EvolveOptions, MutationWord, PatternState};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VariableKey {
    pub g: Vec<i64>,
    #[serde(rename = "F")]
    pub f: MultiPoly,
}

impl VariableKey {
    pub fn of(state: &PatternState, j: usize) -> Result<VariableKey> {
        Ok(VariableKey {
            g: state.g().column(j),
            f: state.fpolys_required()?[j].clone(),
        })
    }

    pub fn is_initial(&self) -> bool {
        self.f.is_one() && self.g.iter().filter(|&&x| x != 0).count() == 1 && self.g.contains(&1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey {
    pub variables: Vec<VariableKey>,
    pub b: IntMat,
}

impl SeedKey {
    /// Also returns the sorting permutation: position `p` of the key holds
    /// column `sigma[p]` of the state.
    pub fn of(state: &PatternState) -> Result<(SeedKey, Vec<usize>)> {
        let n = state.rank();
        let keys = (0..n)
            .map(|j| VariableKey::of(state, j))
            .collect::<Result<Vec<_>>>()?;
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let b = state.b().matrix().conjugate_by(&sigma);
        let variables = sigma.iter().map(|&i| keys[i].clone()).collect();
        Ok((SeedKey { variables, b }, sigma))
    }
}

/// A cluster variable found during exploration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableInfo {
    pub key: VariableKey,
    /// The first place the variable was seen.
    pub reference: VariableRef,
    pub d: Vec<i64>,
    pub f: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedNode {
    /// A word reaching a labeled representative of the seed.
    pub word: MutationWord,
    pub depth: usize,
    /// Variable ids in the column order of the representative.
    pub cluster: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// 0-based direction at the representative of `from`; serialized 1-based.
    #[serde(serialize_with = "one_based")]
    pub direction: usize,
}

fn one_based<S: serde::Serializer>(k: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*k as u64 + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Complete,
    Truncated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_seeds: usize,
    pub max_depth: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_seeds: 100_000,
            max_depth: 64,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    b0: ExchangeMatrix,
    nodes: Vec<SeedNode>,
    seed_keys: Vec<SeedKey>,
    edges: Vec<Edge>,
    variables: Vec<VariableInfo>,
    status: Status,
}

/// Explores from the rooted vertex.
pub fn explore(b0: &ExchangeMatrix, bounds: Bounds) -> Result<ExchangeGraph> {
    explore_from(PatternState::initial(b0, EvolveOptions::default()), bounds)
}

/// Explores from an arbitrary vertex; keys stay relative to the rooted vertex
/// of `start`, so every start inside one exchange graph gives the same seeds.
pub fn explore_from(start: PatternState, bounds: Bounds) -> Result<ExchangeGraph> {
    if bounds.max_seeds == 0 {
        return Err(Error::BadParameters("max_seeds must be at least 1".into()));
    }
    let n = start.rank();
    let mut g = ExchangeGraph {
        b0: start.initial_matrix().clone(),
        nodes: Vec::new(),
        seed_keys: Vec::new(),
        edges: Vec::new(),
        variables: Vec::new(),
        status: Status::Complete,
    };
    let mut seed_index: HashMap<SeedKey, usize> = HashMap::new();
    let mut var_index: HashMap<VariableKey, usize> = HashMap::new();
    let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();

    let root = g.add_node(&start, 0, &mut seed_index, &mut var_index)?.0;
    let mut frontier: Vec<(usize, PatternState)> = vec![(root, start)];
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth >= bounds.max_depth {
            g.status = Status::Truncated;
            break;
        }
        // Expand in parallel, merge sequentially in (parent, direction) order.
        let expanded: Vec<Vec<PatternState>> = frontier
            .par_iter()
            .map(|(_, s)| (0..n).map(|k| s.step(k)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for ((parent, _), children) in frontier.iter().zip(expanded) {
            for (k, child) in children.into_iter().enumerate() {
                let (key, _) = SeedKey::of(&child)?;
                let id = match seed_index.get(&key) {
                    Some(&id) => id,
                    None => {
                        if g.nodes.len() >= bounds.max_seeds {
                            g.status = Status::Truncated;
                            continue;
                        }
                        let (id, _) = g.add_node(&child, depth + 1, &mut seed_index, &mut var_index)?;
                        next.push((id, child));
                        id
                    }
                };
                let pair = (*parent.min(&id), *parent.max(&id));
                if edge_set.insert(pair) {
                    g.edges.push(Edge {
                        from: *parent,
                        to: id,
                        direction: k,
                    });
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(g)
}

impl ExchangeGraph {
    fn add_node(
        &mut self,
        state: &PatternState,
        depth: usize,
        seed_index: &mut HashMap<SeedKey, usize>,
        var_index: &mut HashMap<VariableKey, usize>,
    ) -> Result<(usize, bool)> {
        let (key, _) = SeedKey::of(state)?;
        if let Some(&id) = seed_index.get(&key) {
            return Ok((id, false));
        }
        let word = MutationWord::new(state.word().to_vec());
        let mut cluster = Vec::with_capacity(state.rank());
        for j in 0..state.rank() {
            let vk = VariableKey::of(state, j)?;
            let vid = match var_index.get(&vk) {
                Some(&v) => v,
                None => {
                    let v = self.variables.len();
                    self.variables.push(VariableInfo {
                        key: vk.clone(),
                        reference: VariableRef::new(word.clone(), j),
                        d: state.d().column(j),
                        f: state.f().column(j),
                    });
                    var_index.insert(vk, v);
                    v
                }
            };
            cluster.push(vid);
        }
        let id = self.nodes.len();
        self.nodes.push(SeedNode {
            word,
            depth,
            cluster,
        });
        self.seed_keys.push(key.clone());
        seed_index.insert(key, id);
        Ok((id, true))
    }

    pub fn initial_matrix(&self) -> &ExchangeMatrix {
        &self.b0
    }
    pub fn status(&self) -> Status {
        self.status
    }
    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }
    pub fn nodes(&self) -> &[SeedNode] {
        &self.nodes
    }
    pub fn seed_keys(&self) -> &[SeedKey] {
        &self.seed_keys
    }
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
    pub fn variables(&self) -> &[VariableInfo] {
        &self.variables
    }

    /// Id of the variable with the given key.
    pub fn variable_id(&self, key: &VariableKey) -> Option<usize> {
        self.variables.iter().position(|v| &v.key == key)
    }

    /// Id of the variable denoted by `r`, evolving its F-polynomial.
    pub fn resolve(&self, r: &VariableRef) -> Result<Option<usize>> {
        r.check_rank(self.b0.rank())?;
        let s = crate::pattern::evolve(&self.b0, r.word.letters(), EvolveOptions::default())?;
        Ok(self.variable_id(&VariableKey::of(&s, r.index)?))
    }

    fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::RequiresComplete)
        }
    }

    pub fn cluster_complex(&self) -> Result<ClusterComplex> {
        self.require_complete()?;
        let mut facets: Vec<Vec<usize>> = self
            .nodes
            .iter()
            .map(|n| {
                let mut c = n.cluster.clone();
                c.sort_unstable();
                c
            })
            .collect();
        facets.sort();
        facets.dedup();
        Ok(ClusterComplex {
            rank: self.b0.rank(),
            vertices: self.variables.iter().map(|v| v.key.clone()).collect(),
            facets,
        })
    }

    /// A cluster containing both variables, if any.
    pub fn find_common_cluster(&self, a: usize, b: usize) -> Result<Option<Vec<usize>>> {
        self.require_complete()?;
        Ok(self
            .cluster_complex()?
            .facets
            .into_iter()
            .find(|f| f.contains(&a) && f.contains(&b)))
    }

    /// A set `X` such that `X + {a}` and `X + {b}` are both clusters.
    pub fn find_exchange_witness(&self, a: usize, b: usize) -> Result<Option<Vec<usize>>> {
        self.require_complete()?;
        if a == b {
            return Ok(None);
        }
        let complex = self.cluster_complex()?;
        let facets: BTreeSet<&Vec<usize>> = complex.facets.iter().collect();
        for f in &complex.facets {
            if !f.contains(&a) || f.contains(&b) {
                continue;
            }
            let x: Vec<usize> = f.iter().copied().filter(|&v| v != a).collect();
            let mut other = x.clone();
            other.push(b);
            other.sort_unstable();
            if facets.contains(&other) {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// Graphviz rendering; nodes are labeled by their clusters.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph exchange {\n  node [shape=box];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let vars: Vec<String> = n.cluster.iter().map(|v| format!("v{v}")).collect();
            let _ = writeln!(
                s,
                "  s{i} [label=\"[{}]\\n{}\"];",
                n.word,
                vars.join(" ")
            );
        }
        for e in &self.edges {
            let _ = writeln!(s, "  s{} -- s{} [label=\"{}\"];", e.from, e.to, e.direction + 1);
        }
        s.push_str("}\n");
        s
    }

    /// Per-node degree in the exchange graph.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.edges {
            deg[e.from] += 1;
            deg[e.to] += 1;
        }
        deg
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterComplex {
    #[serde(skip)]
    pub rank: usize,
    pub vertices: Vec<VariableKey>,
    /// Sorted variable ids per cluster.
    pub facets: Vec<Vec<usize>>,
}

impl ClusterComplex {
    /// Facets sharing exactly `rank - 1` vertices with each facet.
    pub fn neighbor_counts(&self) -> Vec<usize> {
        let mut by_ridge: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for drop in 0..f.len() {
                let mut ridge = f.clone();
                ridge.remove(drop);
                by_ridge.entry(ridge).or_default().push(i);
            }
        }
        let mut counts = vec![0; self.facets.len()];
        for members in by_ridge.values() {
            for &i in members {
                counts[i] += members.len() - 1;
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::evolve;

    fn b(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn a2_pentagon() {
        let g = explore(&b(&[&[0, 1], &[-1, 0]]), Bounds::default()).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.nodes().len(), 5);
        assert_eq!(g.edges().len(), 5);
        assert_eq!(g.variables().len(), 5);
        assert!(g.degrees().iter().all(|&d| d == 2));
        let cx = g.cluster_complex().unwrap();
        assert_eq!(cx.facets.len(), 5);
        assert!(cx.neighbor_counts().iter().all(|&c| c == 2));
        let dot = g.to_dot();
        assert_eq!(dot.matches(" -- ").count(), 5);
    }

    #[test]
    fn rank_one() {
        let g = explore(&b(&[&[0]]), Bounds::default()).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.nodes().len(), 2);
    }

    #[test]
    fn affine_rank_two_truncates() {
        let g = explore(
            &b(&[&[0, 2], &[-2, 0]]),
            Bounds {
                max_seeds: 50,
                max_depth: 64,
            },
        )
        .unwrap();
        assert_eq!(g.status(), Status::Truncated);
        assert_eq!(g.nodes().len(), 50);
        assert_eq!(g.cluster_complex(), Err(Error::RequiresComplete));
    }

    #[test]
    fn a3_complex() {
        let g = explore(&b(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]), Bounds::default()).unwrap();
        let cx = g.cluster_complex().unwrap();
        assert_eq!(cx.vertices.len(), 9);
        assert_eq!(cx.facets.len(), 14);
        assert!(cx.facets.iter().all(|f| f.len() == 3));
        assert!(cx.neighbor_counts().iter().all(|&c| c == 3));
    }

    #[test]
    fn a2_common_cluster_and_witness() {
        let m = b(&[&[0, 1], &[-1, 0]]);
        let g = explore(&m, Bounds::default()).unwrap();
        let id = |w: &[usize], j| g.resolve(&VariableRef::new(MutationWord::new(w.to_vec()), j)).unwrap().unwrap();
        let (x1, x2) = (id(&[], 0), id(&[], 1));
        assert!(g.find_common_cluster(x1, x2).unwrap().is_some());
        let far = id(&[1, 0], 0);
        assert!(g.find_common_cluster(x1, far).unwrap().is_none());
        let flipped = id(&[0], 0);
        assert_eq!(g.find_exchange_witness(x1, flipped).unwrap(), Some(vec![x2]));
        assert!(g.find_exchange_witness(x1, far).unwrap().is_some());
    }

    #[test]
    fn start_vertex_does_not_matter() {
        let m = b(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]);
        let g = explore(&m, Bounds::default()).unwrap();
        let start = evolve(&m, &[2, 0, 1], EvolveOptions::default()).unwrap();
        let h = explore_from(start, Bounds::default()).unwrap();
        let a: BTreeSet<_> = g.seed_keys().iter().collect();
        let bset: BTreeSet<_> = h.seed_keys().iter().collect();
        assert_eq!(a, bset);
    }

    #[test]
    fn initial_keys() {
        let m = b(&[&[0, 1], &[-1, 0]]);
        let g = explore(&m, Bounds::default()).unwrap();
        let initial: Vec<bool> = g.variables().iter().map(|v| v.key.is_initial()).collect();
        assert_eq!(initial.iter().filter(|&&x| x).count(), 2);
        for v in g.variables() {
            assert_eq!(v.key.is_initial(), v.key.f.is_one());
        }
    }
}
