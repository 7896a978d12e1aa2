//! Standard groupoids and random unitary representations of them.

use std::collections::VecDeque;

use num_complex::Complex;
use rand::Rng;

use crate::cvna::Algebra;
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, GRepresentation};
use crate::linalg::{random_unitary_with, ComplexMatrix};
use crate::scalar::Real;

/// A one-object groupoid on the arrows `labels` with product `mul`.
pub fn group<S: Into<String>>(
    labels: impl IntoIterator<Item = S>,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FiniteGroupoid> {
    let arrows = Algebra::new(labels)?;
    let n = arrows.len();
    FiniteGroupoid::new(Algebra::new(["*"])?, arrows, vec![0; n], vec![0; n], |a, b| {
        Some(mul(a, b))
    })
}

/// `act(g, x)`: the point that arrow `g` of a group moves `x` to.
type PointAction = fn(usize, usize) -> usize;

/// `ℤ/n`, arrow `rk` standing for `k`.
pub fn cyclic(n: usize) -> Result<FiniteGroupoid> {
    if n == 0 {
        return Err(Error::InvalidGroupoid("the cyclic group of order 0".into()));
    }
    group((0..n).map(|k| format!("r{k}")), |a, b| (a + b) % n)
}

/// `ℤ/2 × ℤ/2`.
pub fn klein() -> Result<FiniteGroupoid> {
    group(["e", "a", "b", "ab"], |x, y| x ^ y)
}

/// The symmetric group on `n` letters, permutations in lexicographic order of
/// their one-line notation, `(σ ∘ τ)(i) = σ(τ(i))`.
pub fn symmetric(n: usize) -> Result<FiniteGroupoid> {
    let perms = permutations(n);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
    let labels = perms
        .iter()
        .map(|p| format!("s{}", p.iter().map(|x| x.to_string()).collect::<String>()));
    group(labels, |a, b| {
        let c: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
        index(&c)
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q: Vec<usize> = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `k` objects with only identity arrows.
pub fn trivial(k: usize) -> Result<FiniteGroupoid> {
    FiniteGroupoid::new(
        Algebra::new((0..k).map(|x| format!("x{x}")))?,
        Algebra::new((0..k).map(|x| format!("1x{x}")))?,
        (0..k).collect(),
        (0..k).collect(),
        |a, b| (a == b).then_some(a),
    )
}

/// One arrow `j -> i` for every ordered pair of `k` objects, labelled `xi<-xj`.
pub fn pair(k: usize) -> Result<FiniteGroupoid> {
    let arrows: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    FiniteGroupoid::new(
        Algebra::new((0..k).map(|x| format!("x{x}")))?,
        Algebra::new(arrows.iter().map(|(i, j)| format!("x{i}<-x{j}")))?,
        arrows.iter().map(|a| a.1).collect(),
        arrows.iter().map(|a| a.0).collect(),
        |a, b| Some(arrows[a].0 * k + arrows[b].1),
    )
}

/// The action groupoid of a group acting on `points` points: arrows `(g, x)`
/// from `x` to `act(g, x)`, labelled `g@x`.
pub fn action(group: &FiniteGroupoid, points: usize, act: impl Fn(usize, usize) -> usize) -> Result<FiniteGroupoid> {
    if !group.is_group() {
        return Err(Error::InvalidGroupoid("only a one-object groupoid can act".into()));
    }
    let n = group.arrows().len();
    let arrows: Vec<(usize, usize)> = (0..n).flat_map(|g| (0..points).map(move |x| (g, x))).collect();
    let target: Vec<usize> = arrows.iter().map(|&(g, x)| act(g, x)).collect();
    if target.iter().any(|&y| y >= points) {
        return Err(Error::InvalidGroupoid("the action leaves the point set".into()));
    }
    FiniteGroupoid::new(
        Algebra::new((0..points).map(|x| format!("p{x}")))?,
        Algebra::new(arrows.iter().map(|&(g, x)| format!("{}@p{x}", group.arrows().label(g))))?,
        arrows.iter().map(|a| a.1).collect(),
        target,
        |a, b| {
            let (h, _) = arrows[a];
            let (g, x) = arrows[b];
            group.compose(h, g).map(|hg| hg * points + x)
        },
    )
}

/// The groupoids used by the absorption suite: cyclic groups up to order 8,
/// `S3`, the Klein group, trivial and pair groupoids on up to 5 objects, and
/// actions of groups of order at most 4 on at most 4 points.
pub fn corpus() -> Result<Vec<(String, FiniteGroupoid)>> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push((format!("Z{n}"), cyclic(n)?));
    }
    out.push(("S3".into(), symmetric(3)?));
    out.push(("Z2xZ2".into(), klein()?));
    out.push(("trivial3".into(), trivial(3)?));
    for k in 1..=5 {
        out.push((format!("pair{k}"), pair(k)?));
    }
    let (z2, z3, z4, v4) = (cyclic(2)?, cyclic(3)?, cyclic(4)?, klein()?);
    let actions: [(&str, &FiniteGroupoid, usize, PointAction); 9] = [
        ("Z2 swapping 2 points", &z2, 2, |g, x| x ^ g),
        ("Z2 fixing 2 points", &z2, 2, |_, x| x),
        (
            "Z2 swapping 2 of 3 points",
            &z2,
            3,
            |g, x| if x < 2 { x ^ g } else { x },
        ),
        ("Z3 rotating 3 points", &z3, 3, |g, x| (x + g) % 3),
        (
            "Z3 rotating 3 of 4 points",
            &z3,
            4,
            |g, x| if x < 3 { (x + g) % 3 } else { x },
        ),
        ("Z4 rotating 4 points", &z4, 4, |g, x| (x + g) % 4),
        ("Z4 through Z2 on 2 points", &z4, 2, |g, x| x ^ (g & 1)),
        ("Z2xZ2 on itself", &v4, 4, |g, x| x ^ g),
        ("Z2xZ2 through a factor on 3 points", &v4, 3, |g, x| {
            if x < 2 {
                x ^ (g & 1)
            } else {
                x
            }
        }),
    ];
    for (name, g, points, act) in actions {
        out.push((name.to_string(), action(g, points, act)?));
    }
    Ok(out)
}

/// For each orbit: its smallest object `r` and an arrow `r -> x` for every
/// object `x` of the orbit.
fn spanning_arrows(g: &FiniteGroupoid) -> Vec<(usize, Vec<(usize, usize)>)> {
    g.orbits()
        .into_iter()
        .map(|orbit| {
            let root = orbit[0];
            let mut tau = vec![(root, g.identity(root))];
            let mut queue = VecDeque::from([(root, g.identity(root))]);
            let mut reached = vec![false; g.objects().len()];
            reached[root] = true;
            while let Some((x, tx)) = queue.pop_front() {
                for a in (0..g.arrows().len()).filter(|&a| g.source(a) == x) {
                    let y = g.target(a);
                    if !reached[y] {
                        reached[y] = true;
                        let ty = g.compose(a, tx).expect("composable");
                        tau.push((y, ty));
                        queue.push_back((y, ty));
                    }
                }
            }
            (root, tau)
        })
        .collect()
}

/// The one-dimensional characters of the group `arrows` (all loops at one
/// object) as exponents `e` with `χ(k) = exp(2πi e_k / n)`, `n` the order.
fn characters(g: &FiniteGroupoid, arrows: &[usize]) -> Vec<Vec<usize>> {
    let n = arrows.len();
    let pos = |a: usize| arrows.iter().position(|&b| b == a).expect("closed");
    let mul = |i: usize, j: usize| pos(g.compose(arrows[i], arrows[j]).expect("loops compose"));
    let identity = pos(g.identity(g.source(arrows[0])));
    // Greedy generating set, each generator outside the span of the previous.
    let mut gens = Vec::new();
    let mut span = vec![identity];
    for k in 0..n {
        if !span.contains(&k) {
            gens.push(k);
            span = closure(&span, &gens, mul);
        }
    }
    let mut out = Vec::new();
    let mut exps = vec![0; gens.len()];
    loop {
        if let Some(chi) = extend_character(n, identity, &gens, &exps, mul) {
            out.push(chi);
        }
        let Some(k) = exps.iter().position(|&e| e + 1 < n) else {
            break;
        };
        exps[k] += 1;
        for e in &mut exps[..k] {
            *e = 0;
        }
    }
    out
}

fn closure(seed: &[usize], gens: &[usize], mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut span = seed.to_vec();
    let mut k = 0;
    while k < span.len() {
        for &s in gens {
            let x = mul(s, span[k]);
            if !span.contains(&x) {
                span.push(x);
            }
        }
        k += 1;
    }
    span
}

fn extend_character(
    n: usize,
    identity: usize,
    gens: &[usize],
    exps: &[usize],
    mul: impl Fn(usize, usize) -> usize,
) -> Option<Vec<usize>> {
    let mut chi = vec![None; n];
    chi[identity] = Some(0);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for (&s, &e) in gens.iter().zip(exps) {
            let y = mul(s, x);
            let v = (chi[x].expect("visited") + e) % n;
            match chi[y] {
                None => {
                    chi[y] = Some(v);
                    queue.push_back(y);
                }
                Some(w) if w != v => return None,
                _ => {}
            }
        }
    }
    let chi: Vec<usize> = chi.into_iter().collect::<Option<_>>()?;
    (0..n)
        .all(|i| (0..n).all(|j| chi[mul(i, j)] == (chi[i] + chi[j]) % n))
        .then_some(chi)
}

/// A random unitary representation of the isotropy group `arrows` of
/// dimension `dim`: a direct sum of one-dimensional characters and
/// character-twisted permutation actions on the cosets of cyclic subgroups,
/// conjugated by a Haar unitary. Returns one matrix per entry of `arrows`.
fn random_isotropy_rep<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    g: &FiniteGroupoid,
    arrows: &[usize],
    dim: usize,
) -> Vec<ComplexMatrix<T>> {
    let n = arrows.len();
    let pos = |a: usize| arrows.iter().position(|&b| b == a).expect("closed");
    let mul = |i: usize, j: usize| pos(g.compose(arrows[i], arrows[j]).expect("loops compose"));
    let chars = characters(g, arrows);
    let phase = |e: usize| Complex::from_polar(T::one(), T::lit(std::f64::consts::TAU * e as f64 / n as f64));

    let mut blocks: Vec<Vec<ComplexMatrix<T>>> = Vec::new();
    let mut used = 0;
    while used < dim {
        let chi = &chars[rng.random_range(0..chars.len())];
        // Coset actions of cyclic subgroups that still fit.
        let cosets: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|h| coset_partition(n, h, mul))
            .filter(|c| c.len() > 1 && c.len() <= dim - used)
            .collect();
        if cosets.is_empty() || rng.random_bool(0.5) {
            blocks.push((0..n).map(|k| ComplexMatrix::diag(&[phase(chi[k])])).collect());
            used += 1;
            continue;
        }
        let parts = &cosets[rng.random_range(0..cosets.len())];
        let which = |x: usize| parts.iter().position(|c| c.contains(&x)).expect("partition");
        blocks.push(
            (0..n)
                .map(|k| {
                    let mut p = ComplexMatrix::zeros(parts.len(), parts.len());
                    for (c, coset) in parts.iter().enumerate() {
                        p[(which(mul(k, coset[0])), c)] = phase(chi[k]);
                    }
                    p
                })
                .collect(),
        );
        used += parts.len();
    }
    let q: ComplexMatrix<T> = random_unitary_with(dim, rng);
    (0..n)
        .map(|k| {
            let sum = ComplexMatrix::direct_sum(blocks.iter().map(|b| &b[k]));
            q.try_mul(&sum)
                .and_then(|m| m.try_mul(&q.adjoint()))
                .expect("square blocks of matching size")
        })
        .collect()
}

/// Left cosets `k⟨h⟩` of the cyclic subgroup generated by `h`.
fn coset_partition(n: usize, h: usize, mul: impl Fn(usize, usize) -> usize + Copy) -> Vec<Vec<usize>> {
    let mut sub = vec![h];
    while let Some(&last) = sub.last() {
        let next = mul(h, last);
        if next == h {
            break;
        }
        sub.push(next);
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        if parts.iter().any(|c| c.contains(&k)) {
            continue;
        }
        let mut coset: Vec<usize> = sub.iter().map(|&s| mul(k, s)).collect();
        coset.sort_unstable();
        parts.push(coset);
    }
    parts
}

/// A random unitary representation with fiber rank `ranks[o]` on the `o`-th
/// orbit (see [`FiniteGroupoid::orbits`]).
///
/// On each orbit with root `r` and chosen arrows `τ_x: r -> x`, an isotropy
/// representation `ρ` at `r` and Haar unitaries `W_x` give
/// `α_g = W_{t(g)} ρ(τ_{t(g)}⁻¹ ∘ g ∘ τ_{s(g)}) W_{s(g)}*`, which is
/// multiplicative by construction.
pub fn random_rep_by_orbit<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    g: &FiniteGroupoid,
    ranks: &[usize],
) -> Result<GRepresentation<T>> {
    let orbits = spanning_arrows(g);
    if ranks.len() != orbits.len() || ranks.contains(&0) {
        return Err(Error::InvalidRepresentation(format!(
            "expected {} positive ranks, one per orbit",
            orbits.len()
        )));
    }
    let n0 = g.objects().len();
    let mut dims = vec![0; n0];
    let mut tau = vec![0; n0];
    let mut w: Vec<ComplexMatrix<T>> = vec![ComplexMatrix::zeros(0, 0); n0];
    let mut rho: Vec<(Vec<usize>, Vec<ComplexMatrix<T>>)> = Vec::new();
    let mut orbit_of = vec![0; n0];
    for (o, (root, arrows_to)) in orbits.iter().enumerate() {
        let d = ranks[o];
        for &(x, a) in arrows_to {
            dims[x] = d;
            tau[x] = a;
            orbit_of[x] = o;
            w[x] = random_unitary_with(d, rng);
        }
        let isotropy = g.hom_set(*root, *root);
        let mats = random_isotropy_rep(rng, g, &isotropy, d);
        rho.push((isotropy, mats));
    }
    let blocks = (0..g.arrows().len())
        .map(|a| {
            let (x, y) = (g.source(a), g.target(a));
            let loop_at_root = g
                .compose(g.inverse(tau[y]), g.compose(a, tau[x]).expect("composable"))
                .expect("composable");
            let (isotropy, mats) = &rho[orbit_of[x]];
            let k = isotropy
                .iter()
                .position(|&b| b == loop_at_root)
                .expect("loop at the root");
            w[y].try_mul(&mats[k])?.try_mul(&w[x].adjoint())
        })
        .collect::<Result<Vec<_>>>()?;
    GRepresentation::from_blocks(g, dims, blocks, 1e-9)
}

/// [`random_rep_by_orbit`] with the same rank on every orbit.
pub fn random_rep<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    g: &FiniteGroupoid,
    rank: usize,
) -> Result<GRepresentation<T>> {
    random_rep_by_orbit(rng, g, &vec![rank; g.orbits().len()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::seeded_rng;

    #[test]
    fn sizes() {
        assert_eq!(symmetric(3).unwrap().arrows().len(), 6);
        let p = pair(3).unwrap();
        assert_eq!(p.arrows().len(), 9);
        assert_eq!(p.nerve().unwrap().g2.len(), 27);
        assert_eq!(cyclic(2).unwrap().nerve().unwrap().g2.len(), 4);
    }

    #[test]
    fn character_counts() {
        let count = |g: &FiniteGroupoid| characters(g, &(0..g.arrows().len()).collect::<Vec<_>>()).len();
        assert_eq!(count(&cyclic(6).unwrap()), 6);
        assert_eq!(count(&klein().unwrap()), 4);
        assert_eq!(count(&symmetric(3).unwrap()), 2);
    }

    #[test]
    fn non_faithful_action_is_accepted() {
        let z4 = cyclic(4).unwrap();
        let g = action(&z4, 2, |g, x| x ^ (g & 1)).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1]]);
        assert_eq!(g.hom_set(0, 0).len(), 2);
    }

    #[test]
    fn random_reps_are_valid_across_the_corpus() {
        let mut rng = seeded_rng(3, 0);
        for (name, g) in corpus().unwrap() {
            for rank in 1..=3 {
                let r = random_rep::<f64, _>(&mut rng, &g, rank).unwrap_or_else(|e| panic!("{name}: {e}"));
                assert!(r.cocycle_residual().unwrap() < 1e-12, "{name}");
            }
        }
    }
}
