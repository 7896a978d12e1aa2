use std::collections::HashMap;
use std::sync::Arc;

use crate::cvna::{Algebra, FibreSquare, Hom};
use crate::error::{Error, Result};

/// A finite groupoid with reference weights on objects and arrows.
///
/// `compose(a, b)` is `a ∘ b`, defined when `source(a) == target(b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroupoid {
    objects: Algebra,
    arrows: Algebra,
    source: Arc<[usize]>,
    target: Arc<[usize]>,
    table: Arc<[Option<usize>]>,
    identities: Arc<[usize]>,
    inverses: Arc<[usize]>,
    object_weights: Arc<[f64]>,
    arrow_weights: Arc<[f64]>,
}

/// The structure maps of a groupoid as algebra homomorphisms between the
/// function algebras of `G0`, `G1`, `G2` and the point.
///
/// `G2` lists the composable pairs `(a, b)` with `source(a) == target(b)` in
/// lexicographic order; `p` picks `b` (the arrow applied first), `q` picks `a`
/// and `m` composes them.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub g2: Algebra,
    pub pairs: Vec<(usize, usize)>,
    pub s: Hom,
    pub t: Hom,
    pub p: Hom,
    pub m: Hom,
    pub q: Hom,
    pub pi0: Hom,
    pub pi1: Hom,
    pub pi2: Hom,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidGroupoid(msg.into())
}

impl FiniteGroupoid {
    /// Validates the groupoid axioms. `compose` is only consulted on
    /// composable pairs.
    pub fn new(
        objects: Algebra,
        arrows: Algebra,
        source: Vec<usize>,
        target: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let (n0, n1) = (objects.len(), arrows.len());
        if source.len() != n1 || target.len() != n1 {
            return Err(invalid(format!(
                "{} sources and {} targets for {n1} arrows",
                source.len(),
                target.len()
            )));
        }
        if let Some(a) = (0..n1).find(|&a| source[a] >= n0 || target[a] >= n0) {
            return Err(invalid(format!(
                "arrow {} has an endpoint outside the objects",
                arrows.label(a)
            )));
        }
        let mut table = vec![None; n1 * n1];
        for a in 0..n1 {
            for b in (0..n1).filter(|&b| source[a] == target[b]) {
                let (la, lb) = (arrows.label(a), arrows.label(b));
                let c = compose(a, b).ok_or_else(|| invalid(format!("{la} ∘ {lb} is undefined")))?;
                if c >= n1 {
                    return Err(invalid(format!("{la} ∘ {lb} is not an arrow")));
                }
                if source[c] != source[b] || target[c] != target[a] {
                    return Err(invalid(format!("{la} ∘ {lb} has the wrong endpoints")));
                }
                table[a * n1 + b] = Some(c);
            }
        }
        let mut g = Self {
            objects: objects.clone(),
            arrows,
            source: source.into(),
            target: target.into(),
            table: table.into(),
            identities: Arc::from([]),
            inverses: Arc::from([]),
            object_weights: vec![1.0; n0].into(),
            arrow_weights: vec![1.0; n1].into(),
        };
        g.check_associative()?;
        g.identities = g.find_identities()?.into();
        g.inverses = g.find_inverses()?.into();
        Ok(g)
    }

    /// Builds a groupoid from the list of products `(a, b, a ∘ b)`.
    pub fn from_table(
        objects: Algebra,
        arrows: Algebra,
        source: Vec<usize>,
        target: Vec<usize>,
        products: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let mut map = HashMap::new();
        for &(a, b, c) in products {
            if map.insert((a, b), c).is_some_and(|old| old != c) {
                return Err(invalid(format!("two products listed for arrows {a} and {b}")));
            }
        }
        Self::new(objects, arrows, source, target, |a, b| map.get(&(a, b)).copied())
    }

    /// Replaces the reference weights; every weight must be positive and
    /// finite.
    pub fn with_weights(mut self, objects: Vec<f64>, arrows: Vec<f64>) -> Result<Self> {
        if objects.len() != self.objects.len() || arrows.len() != self.arrows.len() {
            return Err(Error::InvalidWeights(format!(
                "{} object and {} arrow weights for {} objects and {} arrows",
                objects.len(),
                arrows.len(),
                self.objects.len(),
                self.arrows.len()
            )));
        }
        if let Some(w) = objects.iter().chain(&arrows).find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
        }
        self.object_weights = objects.into();
        self.arrow_weights = arrows.into();
        Ok(self)
    }

    fn check_associative(&self) -> Result<()> {
        let n1 = self.arrows.len();
        for a in 0..n1 {
            for b in 0..n1 {
                let Some(ab) = self.compose(a, b) else { continue };
                for c in 0..n1 {
                    let Some(bc) = self.compose(b, c) else { continue };
                    if self.compose(ab, c) != self.compose(a, bc) {
                        return Err(invalid(format!(
                            "composition is not associative at ({}, {}, {})",
                            self.arrows.label(a),
                            self.arrows.label(b),
                            self.arrows.label(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn find_identities(&self) -> Result<Vec<usize>> {
        let n1 = self.arrows.len();
        (0..self.objects.len())
            .map(|x| {
                (0..n1)
                    .find(|&e| {
                        self.source[e] == x
                            && self.target[e] == x
                            && (0..n1).all(|a| {
                                (self.source[a] != x || self.compose(a, e) == Some(a))
                                    && (self.target[a] != x || self.compose(e, a) == Some(a))
                            })
                    })
                    .ok_or_else(|| invalid(format!("object {} has no identity arrow", self.objects.label(x))))
            })
            .collect()
    }

    fn find_inverses(&self) -> Result<Vec<usize>> {
        let n1 = self.arrows.len();
        (0..n1)
            .map(|a| {
                (0..n1)
                    .find(|&b| {
                        self.compose(a, b) == Some(self.identities[self.target[a]])
                            && self.compose(b, a) == Some(self.identities[self.source[a]])
                    })
                    .ok_or_else(|| invalid(format!("arrow {} has no inverse", self.arrows.label(a))))
            })
            .collect()
    }

    pub fn objects(&self) -> &Algebra {
        &self.objects
    }

    pub fn arrows(&self) -> &Algebra {
        &self.arrows
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn target(&self, a: usize) -> usize {
        self.target[a]
    }

    /// `a ∘ b`, if `source(a) == target(b)`.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.arrows.len() + b]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identities[self.source[a]] == a
    }

    pub fn object_weights(&self) -> &[f64] {
        &self.object_weights
    }

    pub fn arrow_weights(&self) -> &[f64] {
        &self.arrow_weights
    }

    /// True when there is exactly one object.
    pub fn is_group(&self) -> bool {
        self.objects.len() == 1
    }

    /// Composable pairs `(a, b)`, lexicographically.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let n1 = self.arrows.len();
        (0..n1)
            .flat_map(|a| (0..n1).map(move |b| (a, b)))
            .filter(|&(a, b)| self.source[a] == self.target[b])
            .collect()
    }

    /// Arrows from `x` to `y`.
    pub fn hom_set(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.source[a] == x && self.target[a] == y)
            .collect()
    }

    /// Arrows with target `x`, ascending.
    pub fn arrows_into(&self, x: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.target[a] == x).collect()
    }

    /// The first arrow that is not an identity, if any.
    pub fn first_non_identity(&self) -> Option<usize> {
        (0..self.arrows.len()).find(|&a| !self.is_identity(a))
    }

    /// Connected components, each listed in ascending order and sorted by
    /// smallest object.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n0 = self.objects.len();
        let mut seen = vec![false; n0];
        let mut out = Vec::new();
        for root in 0..n0 {
            if seen[root] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n0).filter(|&y| !self.hom_set(root, y).is_empty()).collect();
            orbit.sort_unstable();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// The full subgroupoid on `objects`, with the indices of its arrows in
    /// `self`. Labels and weights are inherited.
    pub fn full_subgroupoid(&self, objects: &[usize]) -> Result<(FiniteGroupoid, Vec<usize>)> {
        let mut objs = objects.to_vec();
        objs.sort_unstable();
        objs.dedup();
        if objs.is_empty() || objs.iter().any(|&x| x >= self.objects.len()) {
            return Err(invalid("a subgroupoid needs a nonempty set of existing objects"));
        }
        let local: HashMap<usize, usize> = objs.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let arrows: Vec<usize> = (0..self.arrows.len())
            .filter(|&a| local.contains_key(&self.source[a]) && local.contains_key(&self.target[a]))
            .collect();
        let arrow_local: HashMap<usize, usize> = arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let sub = FiniteGroupoid::new(
            Algebra::new(objs.iter().map(|&x| self.objects.label(x)))?,
            Algebra::new(arrows.iter().map(|&a| self.arrows.label(a)))?,
            arrows.iter().map(|&a| local[&self.source[a]]).collect(),
            arrows.iter().map(|&a| local[&self.target[a]]).collect(),
            |a, b| {
                self.compose(arrows[a], arrows[b])
                    .and_then(|c| arrow_local.get(&c).copied())
            },
        )?
        .with_weights(
            objs.iter().map(|&x| self.object_weights[x]).collect(),
            arrows.iter().map(|&a| self.arrow_weights[a]).collect(),
        )?;
        Ok((sub, arrows))
    }

    /// Disjoint union; labels must stay distinct.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Result<FiniteGroupoid> {
        if parts.is_empty() {
            return Err(invalid("empty disjoint union"));
        }
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let (mut source, mut target) = (Vec::new(), Vec::new());
        let (mut ow, mut aw) = (Vec::new(), Vec::new());
        let mut offsets = Vec::new();
        for g in parts {
            let (o0, o1) = (objects.len(), arrows.len());
            offsets.push(o1);
            objects.extend(g.objects.labels().iter().cloned());
            arrows.extend(g.arrows.labels().iter().cloned());
            source.extend(g.source.iter().map(|x| x + o0));
            target.extend(g.target.iter().map(|x| x + o0));
            ow.extend_from_slice(&g.object_weights);
            aw.extend_from_slice(&g.arrow_weights);
        }
        let part_of = |a: usize| offsets.iter().rposition(|&o| o <= a).expect("offsets start at zero");
        FiniteGroupoid::new(Algebra::new(objects)?, Algebra::new(arrows)?, source, target, |a, b| {
            let (k, o) = (part_of(a), offsets[part_of(a)]);
            if part_of(b) != k {
                return None;
            }
            parts[k].compose(a - o, b - o).map(|c| c + o)
        })?
        .with_weights(ow, aw)
    }

    /// True when `other` has the same objects, arrows, endpoints and
    /// composition, matched by label.
    pub fn same_up_to_order(&self, other: &FiniteGroupoid) -> bool {
        if self.objects.len() != other.objects.len() || self.arrows.len() != other.arrows.len() {
            return false;
        }
        let obj: Option<Vec<usize>> = self
            .objects
            .labels()
            .iter()
            .map(|l| other.objects.index_of(l))
            .collect();
        let arr: Option<Vec<usize>> = self.arrows.labels().iter().map(|l| other.arrows.index_of(l)).collect();
        let (Some(obj), Some(arr)) = (obj, arr) else {
            return false;
        };
        let n1 = self.arrows.len();
        (0..n1).all(|a| obj[self.source[a]] == other.source[arr[a]] && obj[self.target[a]] == other.target[arr[a]])
            && (0..n1).all(|a| (0..n1).all(|b| self.compose(a, b).map(|c| arr[c]) == other.compose(arr[a], arr[b])))
    }

    pub fn nerve(&self) -> Result<Nerve> {
        let pairs = self.composable_pairs();
        let g2 = Algebra::new(
            pairs
                .iter()
                .map(|&(a, b)| format!("{}|{}", self.arrows.label(a), self.arrows.label(b))),
        )?;
        let g0 = &self.objects;
        let g1 = &self.arrows;
        let point = Algebra::scalars();
        let m = pairs
            .iter()
            .map(|&(a, b)| self.compose(a, b).expect("pairs are composable"))
            .collect();
        Ok(Nerve {
            s: Hom::new(g0, g1, self.source.to_vec())?,
            t: Hom::new(g0, g1, self.target.to_vec())?,
            p: Hom::new(g1, &g2, pairs.iter().map(|x| x.1).collect())?,
            m: Hom::new(g1, &g2, m)?,
            q: Hom::new(g1, &g2, pairs.iter().map(|x| x.0).collect())?,
            pi0: Hom::new(&point, g0, vec![0; g0.len()])?,
            pi1: Hom::new(&point, g1, vec![0; g1.len()])?,
            pi2: Hom::new(&point, &g2, vec![0; g2.len()])?,
            g2,
            pairs,
        })
    }
}

impl Nerve {
    /// The square `t ∘ p = s ∘ q`: `G2` is the fibre product of `s` and `t`,
    /// with `q` and `p` as its projections.
    pub fn source_square(&self) -> Result<FibreSquare> {
        FibreSquare::with_pairs(&self.s, &self.t, &self.g2, self.pairs.clone())
    }

    /// The square `t ∘ m = t ∘ q`: `G2` is the fibre product of `t` with
    /// itself through `(a, b) ↦ (a, a ∘ b)`, with `q` and `m` as its
    /// projections.
    pub fn target_square(&self) -> Result<FibreSquare> {
        let pairs = self
            .pairs
            .iter()
            .zip(self.m.spec_map())
            .map(|(&(a, _), &ab)| (a, ab))
            .collect();
        FibreSquare::with_pairs(&self.t, &self.t, &self.g2, pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteGroupoid {
        FiniteGroupoid::new(
            Algebra::scalars(),
            Algebra::new(["e", "a"]).unwrap(),
            vec![0, 0],
            vec![0, 0],
            |a, b| Some(a ^ b),
        )
        .unwrap()
    }

    #[test]
    fn z2_nerve_sizes() {
        let g = z2();
        let n = g.nerve().unwrap();
        assert_eq!(n.g2.len(), 4);
        assert_eq!(g.identity(0), 0);
        assert_eq!(g.inverse(1), 1);
        assert!(n.source_square().unwrap().commutes());
        assert!(n.target_square().unwrap().commutes());
    }

    #[test]
    fn missing_inverse_is_rejected() {
        // The monoid {1, 0} under multiplication is not a group.
        let err = FiniteGroupoid::new(
            Algebra::scalars(),
            Algebra::new(["one", "zero"]).unwrap(),
            vec![0, 0],
            vec![0, 0],
            |a, b| Some(a.max(b)),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidGroupoid(_)));
    }

    #[test]
    fn wrong_endpoints_are_rejected() {
        let err = FiniteGroupoid::new(
            Algebra::new(["x", "y"]).unwrap(),
            Algebra::new(["1x", "1y", "f"]).unwrap(),
            vec![0, 1, 0],
            vec![0, 1, 1],
            |a, b| Some(if a == 2 || b == 2 { 2 } else { a }),
        );
        assert!(err.is_err());
    }

    #[test]
    fn weights_must_be_positive() {
        assert!(z2().with_weights(vec![1.0], vec![1.0, 0.0]).is_err());
        assert!(z2().with_weights(vec![2.0], vec![0.5, 3.0]).is_ok());
    }
}
