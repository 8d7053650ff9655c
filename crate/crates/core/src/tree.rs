//! The weighted residue-class tree `T(f, l)` built from the p-adic expansions
//! of the roots of `f`.
//!
//! The vertex at level `m` with residue `u` stands for the class
//! `u + p^m Z_p`. Its weight is the total multiplicity of the roots in that
//! class, and its stalk weight is the sum of weights from the root of the
//! tree down to it, which is `v_p(f(x))` for every `x` in the class that
//! avoids the class's children.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_integer::Integer as _;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{padic_expand, PAdicContext};
use crate::polyio::{compute_lf, FactoredPoly};
use crate::{Error, Integer, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub level: u32,
    /// Representative in `{0, ..., p^level - 1}`.
    pub residue: Integer,
    pub parent: Option<usize>,
    /// Ordered by ascending residue.
    pub children: Vec<usize>,
    pub weight: u64,
    pub stalk_weight: u64,
    pub valence: u64,
}

/// Vertices are stored level by level, residues ascending within a level;
/// vertex 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    p: Integer,
    lf: u32,
    vertices: Vec<Vertex>,
}

impl WeightedTree {
    pub fn p(&self) -> &Integer {
        &self.p
    }

    /// The depth parameter the tree was built with; leaves sit at `lf + 1`.
    pub fn lf(&self) -> u32 {
        self.lf
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn root(&self) -> &Vertex {
        &self.vertices[0]
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id]
    }

    pub fn level(&self, m: u32) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter().filter(move |v| v.level == m)
    }

    pub fn find(&self, level: u32, residue: &Integer) -> Option<&Vertex> {
        self.vertices
            .iter()
            .find(|v| v.level == level && &v.residue == residue)
    }

    /// Strict ancestors of `id`, nearest first.
    pub fn ancestors(&self, id: usize) -> impl Iterator<Item = &Vertex> {
        std::iter::successors(self.vertices[id].parent, |&a| self.vertices[a].parent)
            .map(|a| &self.vertices[a])
    }

    /// Graphviz rendering; edges point from each vertex to its parent.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph T {\n");
        for v in &self.vertices {
            let _ = writeln!(
                out,
                "  n{} [label=\"level={} residue={} W={} W*={} Val={}\"];",
                v.id, v.level, v.residue, v.weight, v.stalk_weight, v.valence
            );
        }
        for v in &self.vertices {
            if let Some(parent) = v.parent {
                let _ = writeln!(out, "  n{} -> n{};", v.id, parent);
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_document(&self) -> TreeDocument {
        TreeDocument {
            p: self.p.to_string(),
            l_f: self.lf,
            root: 0,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDocument {
                    id: v.id,
                    level: v.level,
                    residue: v.residue.to_string(),
                    parent: v.parent,
                    children: v.children.clone(),
                    weight: v.weight,
                    stalk_weight: v.stalk_weight,
                    valence: v.valence,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TreeDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        WeightedTree::try_from(doc)
    }
}

/// JSON mirror of [`WeightedTree`]; every number is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDocument {
    pub p: String,
    #[serde(with = "crate::decimal")]
    pub l_f: u32,
    #[serde(with = "crate::decimal")]
    pub root: usize,
    pub vertices: Vec<VertexDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDocument {
    #[serde(with = "crate::decimal")]
    pub id: usize,
    #[serde(with = "crate::decimal")]
    pub level: u32,
    pub residue: String,
    #[serde(with = "crate::decimal::option")]
    pub parent: Option<usize>,
    #[serde(with = "crate::decimal::vec")]
    pub children: Vec<usize>,
    #[serde(with = "crate::decimal")]
    pub weight: u64,
    #[serde(with = "crate::decimal")]
    pub stalk_weight: u64,
    #[serde(with = "crate::decimal")]
    pub valence: u64,
}

impl TryFrom<TreeDocument> for WeightedTree {
    type Error = Error;

    fn try_from(doc: TreeDocument) -> Result<Self> {
        let bad = |what: &str| Error::Document(what.to_string());
        let p: Integer = doc.p.parse().map_err(|_| bad("p"))?;
        if doc.root != 0 || doc.vertices.is_empty() {
            return Err(bad("root must be vertex 0"));
        }
        let mut vertices = Vec::with_capacity(doc.vertices.len());
        for (i, v) in doc.vertices.into_iter().enumerate() {
            if v.id != i {
                return Err(bad("vertex ids must be consecutive"));
            }
            if !parent_precedes(v.parent, i) {
                return Err(bad("parent"));
            }
            vertices.push(Vertex {
                id: v.id,
                level: v.level,
                residue: v.residue.parse().map_err(|_| bad("residue"))?,
                parent: v.parent,
                children: v.children,
                weight: v.weight,
                stalk_weight: v.stalk_weight,
                valence: v.valence,
            });
        }
        let n = vertices.len();
        for v in &vertices {
            if v.children.iter().any(|&c| c >= n || vertices[c].parent != Some(v.id)) {
                return Err(bad("children"));
            }
            if v.valence != v.children.len() as u64 {
                return Err(bad("valence"));
            }
        }
        Ok(WeightedTree {
            p,
            lf: doc.l_f,
            vertices,
        })
    }
}

fn parent_precedes(parent: Option<usize>, id: usize) -> bool {
    match parent {
        None => id == 0,
        Some(q) => q < id,
    }
}

/// Builds `T(f, l)`: the union of the stalks of the roots of `fplus` through
/// level `l + 1`. Requires `l >= l_f` so every root sits alone in its class
/// at levels `l` and `l + 1`; any larger `l` gives the same zeta function.
pub fn build_tree(fplus: &FactoredPoly, ctx: &PAdicContext, l: u32) -> Result<WeightedTree> {
    let lf = compute_lf(fplus, ctx)?;
    if l < lf {
        return Err(Error::InsufficientDepth { depth: l, lf });
    }
    let roots = fplus.roots();
    let expansions = roots
        .iter()
        .map(|(r, _)| padic_expand(r, ctx, l as usize))
        .collect::<Result<Vec<_>>>()?;

    let mut vertices = vec![Vertex {
        id: 0,
        level: 0,
        residue: Integer::zero(),
        parent: None,
        children: Vec::new(),
        weight: 0,
        stalk_weight: 0,
        valence: 0,
    }];
    if roots.is_empty() {
        return Ok(WeightedTree {
            p: ctx.p().clone(),
            lf: l,
            vertices,
        });
    }

    let mut previous: BTreeMap<Integer, usize> = BTreeMap::from([(Integer::zero(), 0)]);
    for level in 1..=l + 1 {
        let mut classes: BTreeMap<Integer, u64> = BTreeMap::new();
        for (expansion, (_, e)) in expansions.iter().zip(roots) {
            *classes.entry(expansion.truncate(level as usize)).or_default() += u64::from(*e);
        }
        let parent_modulus = ctx.pow(level - 1);
        let mut current = BTreeMap::new();
        for (residue, weight) in classes {
            let parent = previous[&residue.mod_floor(&parent_modulus)];
            let id = vertices.len();
            let stalk_weight = vertices[parent].stalk_weight + weight;
            vertices[parent].children.push(id);
            vertices[parent].valence += 1;
            vertices.push(Vertex {
                id,
                level,
                residue: residue.clone(),
                parent: Some(parent),
                children: Vec::new(),
                weight,
                stalk_weight,
                valence: 0,
            });
            current.insert(residue, id);
        }
        previous = current;
    }
    Ok(WeightedTree {
        p: ctx.p().clone(),
        lf: l,
        vertices,
    })
}

/// Weight-one vertices none of whose strict ancestors has weight one: the
/// first vertex on each stalk where a simple root is isolated.
pub fn minimal_weight_one_set(tree: &WeightedTree) -> BTreeSet<usize> {
    let mut below_one = vec![false; tree.vertices.len()];
    let mut set = BTreeSet::new();
    for v in &tree.vertices {
        if let Some(parent) = v.parent {
            below_one[v.id] = below_one[parent] || tree.vertices[parent].weight == 1;
        }
        if v.weight == 1 && !below_one[v.id] {
            set.insert(v.id);
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    fn poly(roots: &[(i64, u32)]) -> FactoredPoly {
        FactoredPoly::monic(roots.iter().map(|&(r, e)| (q(r), e))).unwrap()
    }

    fn summary(t: &WeightedTree) -> Vec<(u32, i64, u64, u64)> {
        t.vertices()
            .iter()
            .map(|v| (v.level, v.residue.to_string().parse().unwrap(), v.weight, v.stalk_weight))
            .collect()
    }

    /// Oracle: the class of `u` at level m holds every root congruent to u mod p^m.
    fn brute_weight(roots: &[(i64, u32)], p: i64, level: u32, residue: &Integer) -> u64 {
        let m = p.pow(level);
        roots
            .iter()
            .filter(|(r, _)| Integer::from(r.rem_euclid(m)) == *residue)
            .map(|&(_, e)| u64::from(e))
            .sum()
    }

    #[test]
    fn worked_tree() {
        let roots = [(1, 2), (4, 1)];
        let t = build_tree(&poly(&roots), &ctx(3), 2).unwrap();
        assert_eq!(
            summary(&t),
            vec![
                (0, 0, 0, 0),
                (1, 1, 3, 3),
                (2, 1, 2, 5),
                (2, 4, 1, 4),
                (3, 1, 2, 7),
                (3, 4, 1, 5)
            ]
        );
        for v in t.vertices().iter().skip(1) {
            assert_eq!(v.weight, brute_weight(&roots, 3, v.level, &v.residue));
        }
        let m = minimal_weight_one_set(&t);
        let four_mod_nine = t.find(2, &4.into()).unwrap().id;
        assert_eq!(m, BTreeSet::from([four_mod_nine]));
    }

    #[test]
    fn single_stalk() {
        let t = build_tree(&poly(&[(0, 5)]), &ctx(7), 1).unwrap();
        let weights: Vec<_> = t.vertices().iter().map(|v| (v.level, v.weight)).collect();
        assert_eq!(weights, vec![(0, 0), (1, 5), (2, 5)]);
        assert!(minimal_weight_one_set(&t).is_empty());

        let t = build_tree(&poly(&[(0, 1)]), &ctx(5), 1).unwrap();
        assert_eq!(minimal_weight_one_set(&t), BTreeSet::from([1]));
    }

    #[test]
    fn stalks_split_late() {
        // v_2(4) = 2, so l_f = 3
        let f = poly(&[(0, 1), (4, 1)]);
        assert_eq!(compute_lf(&f, &ctx(2)).unwrap(), 3);
        let t = build_tree(&f, &ctx(2), 3).unwrap();
        let at = |m| t.level(m).map(|v| v.weight).collect::<Vec<_>>();
        assert_eq!(at(1), vec![2]);
        assert_eq!(at(2), vec![2]);
        assert_eq!(at(3), vec![1, 1]);
        assert_eq!(at(4), vec![1, 1]);
        assert_eq!(minimal_weight_one_set(&t).len(), 2);
    }

    #[test]
    fn too_shallow() {
        let f = poly(&[(0, 1), (4, 1)]);
        assert_eq!(
            build_tree(&f, &ctx(2), 2),
            Err(Error::InsufficientDepth { depth: 2, lf: 3 })
        );
    }

    #[test]
    fn empty_root_set() {
        let f = FactoredPoly::monic([]).unwrap();
        let t = build_tree(&f, &ctx(3), 1).unwrap();
        assert_eq!(t.vertices().len(), 1);
        assert_eq!(t.root().valence, 0);
    }

    #[test]
    fn serializations() {
        let t = build_tree(&poly(&[(1, 2), (4, 1)]), &ctx(3), 2).unwrap();
        assert_eq!(WeightedTree::from_json(&t.to_json()).unwrap(), t);
        let dot = t.to_dot();
        assert!(dot.starts_with("digraph T {"));
        assert!(dot.contains("n3 [label=\"level=2 residue=4 W=1 W*=4 Val=1\"];"));
        assert!(dot.contains("n3 -> n1;"));
        assert_eq!(dot.matches("->").count(), t.vertices().len() - 1);
        assert!(WeightedTree::from_json("{\"p\":\"3\"}").is_err());
    }

    fn roots_strategy() -> impl Strategy<Value = Vec<(i64, u32)>> {
        prop::collection::btree_map(-300i64..300, 1u32..4, 1..7)
            .prop_map(|m| m.into_iter().collect())
    }

    proptest! {
        #[test]
        fn structural_invariants(roots in roots_strategy(),
                                 p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let c = ctx(p);
            let f = poly(&roots);
            let lf = compute_lf(&f, &c).unwrap();
            let t = build_tree(&f, &c, lf).unwrap();
            let degree = u64::from(f.degree());

            for m in 1..=lf + 1 {
                prop_assert_eq!(t.level(m).map(|v| v.weight).sum::<u64>(), degree);
            }
            let valences: u64 = t.vertices().iter().map(|v| v.valence).sum();
            prop_assert_eq!(valences as usize, t.vertices().len() - 1);
            prop_assert_eq!(t.root().weight, 0);

            let pm = |m: u32| Integer::from(p).pow(m);
            for v in t.vertices() {
                prop_assert_eq!(v.valence as usize, v.children.len());
                if let Some(parent) = v.parent {
                    let parent = t.vertex(parent);
                    prop_assert_eq!(&v.residue.mod_floor(&pm(v.level - 1)), &parent.residue);
                    prop_assert_eq!(v.stalk_weight, parent.stalk_weight + v.weight);
                    prop_assert_eq!(v.weight, brute_weight(&roots, p as i64, v.level, &v.residue));
                }
                if v.level >= lf {
                    prop_assert!(roots.iter().any(|&(_, e)| u64::from(e) == v.weight));
                    let members = roots.iter()
                        .filter(|(r, _)| Integer::from(r.rem_euclid(p.pow(v.level) as i64)) == v.residue)
                        .count();
                    prop_assert_eq!(members, 1);
                }
            }

            // level one against the reduction of f mod p
            let mut mult = BTreeMap::new();
            for &(r, e) in &roots {
                *mult.entry(r.rem_euclid(p as i64)).or_insert(0u32) += e;
            }
            let nu = p as usize - mult.len();
            let delta = mult.values().filter(|&&e| e == 1).count();
            prop_assert_eq!(p as usize - t.root().valence as usize, nu);
            prop_assert_eq!(t.level(1).filter(|v| v.weight == 1).count(), delta);

            let m_set = minimal_weight_one_set(&t);
            for &id in &m_set {
                prop_assert_eq!(t.vertex(id).weight, 1);
                prop_assert!(t.ancestors(id).all(|a| a.weight >= 2 || a.id == 0));
            }
            let simple_roots = roots.iter().filter(|&&(_, e)| e == 1).count();
            prop_assert_eq!(m_set.len(), simple_roots);
        }
    }
}
