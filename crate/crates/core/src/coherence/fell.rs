//! Absorption of representations by the regular representation, over the
//! standard groupoid corpus.

use std::sync::OnceLock;

use rand::Rng;

use crate::coherence::report::{CheckResult, Family, Level, SuiteConfig};
use crate::coherence::trial::Trial;
use crate::error::{Error, Result};
use crate::functors::Formalism;
use crate::groupoid::corpus::{corpus, random_rep, random_rep_by_orbit};
use crate::groupoid::{
    decompose_by_rank, fell_check, pullback_rep, regular_rep_with, tensor_reps, FiniteGroupoid, GRepresentation,
};

fn shared_corpus() -> &'static [(String, FiniteGroupoid)] {
    static CORPUS: OnceLock<Vec<(String, FiniteGroupoid)>> = OnceLock::new();
    CORPUS.get_or_init(|| corpus().expect("the standard corpus is valid"))
}

/// Number of groupoids in the standard corpus; trial `i` uses entry
/// `i mod corpus_len()`.
pub fn corpus_len() -> usize {
    shared_corpus().len()
}

/// `d` times the character of the regular representation, counted directly:
/// at a loop `k` on `x`, `d` times the number of arrows `j` into `x` with
/// `k ∘ j = j`.
pub fn regular_character_oracle(g: &FiniteGroupoid, d: usize) -> Vec<Option<i64>> {
    (0..g.arrows().len())
        .map(|k| {
            let x = g.source(k);
            (x == g.target(k)).then(|| {
                let fixed = g
                    .arrows_into(x)
                    .into_iter()
                    .filter(|&j| g.compose(k, j) == Some(j))
                    .count();
                (d * fixed) as i64
            })
        })
        .collect()
}

/// Largest deviation of the characters of `H_triv ⊠ t_!𝕀` and `H ⊠ t_!𝕀`
/// from the oracle after rounding to integers; non-integral values (beyond
/// `1e-6`) count as a deviation of their distance to the nearest integer
/// plus one.
pub fn character_defect(fx: &Formalism, rep: &GRepresentation<f64>) -> Result<f64> {
    let g = rep.groupoid();
    let d = rep.rank().ok_or_else(|| Error::NotConstantRank {
        ranks: rep.bundle().dims().to_vec(),
    })?;
    let regular = regular_rep_with::<f64>(fx, g)?;
    let trivial = pullback_rep::<f64>(g, d, None, 0.0)?;
    let oracle = regular_character_oracle(g, d);
    let mut worst: f64 = 0.0;
    for side in [tensor_reps(&trivial, &regular)?, tensor_reps(rep, &regular)?] {
        for (chi, expected) in side.character().into_iter().zip(&oracle) {
            let (Some(chi), Some(expected)) = (chi, expected) else {
                continue;
            };
            let rounded = (chi.re.round(), chi.im.round());
            let off = (chi.re - rounded.0).abs().max((chi.im - rounded.1).abs());
            let miss = (rounded.0 - *expected as f64).abs() + rounded.1.abs();
            worst = worst.max(if off > 1e-6 { 1.0 + off } else { miss });
        }
    }
    Ok(worst)
}

/// Splits a representation of orbitwise random rank and checks that the
/// parts reassemble to the groupoid and are each absorbed. Returns the worst
/// absorption residual.
fn decomposition_residual(fx: &Formalism, rep: &GRepresentation<f64>) -> Result<f64> {
    let parts = decompose_by_rank(rep)?;
    let groupoids: Vec<FiniteGroupoid> = parts.iter().map(|p| p.rep.groupoid().clone()).collect();
    if !FiniteGroupoid::disjoint_union(&groupoids)?.same_up_to_order(rep.groupoid()) {
        return Err(Error::InvalidGroupoid(
            "rank parts do not reassemble to the groupoid".into(),
        ));
    }
    let mut worst: f64 = 0.0;
    for p in &parts {
        if p.rep.rank() != Some(p.rank) {
            return Err(Error::NotConstantRank {
                ranks: p.rep.bundle().dims().to_vec(),
            });
        }
        let r = fell_check(fx, &p.rep)?;
        worst = worst.max(r.unitarity).max(r.intertwiner);
    }
    Ok(worst)
}

pub(crate) fn run_trial(fx: &Formalism, cfg: &SuiteConfig, index: usize) -> Vec<CheckResult> {
    let mut t = Trial::new(Family::Fell, cfg, index);
    let (name, g) = &shared_corpus()[index % corpus_len()];
    let max_rank = cfg.max_fiber_dim.clamp(1, 3);
    let rank = t.rng.random_range(1..=max_rank);
    t.set_dims(format!(
        "{name}: |G0|={} |G1|={} rank={rank}",
        g.objects().len(),
        g.arrows().len()
    ));

    let regular = regular_rep_with::<f64>(fx, g);
    t.record(
        "regular-cocycle",
        Level::Direct,
        regular
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|r| r.cocycle_residual()),
    );
    t.record(
        "regular-unitarity",
        Level::Direct,
        regular.and_then(|r| Ok(r.unitarity_residual()?.max(r.identity_residual()?))),
    );

    let rep = random_rep::<f64, _>(&mut t.rng, g, rank);
    match rep {
        Ok(rep) => {
            let r = fell_check(fx, &rep);
            t.record(
                "fell-unitarity",
                Level::Direct,
                r.as_ref().map(|r| r.unitarity).map_err(Clone::clone),
            );
            t.record("fell", Level::Direct, r.map(|r| r.intertwiner));
            t.record("fell-characters", Level::Direct, character_defect(fx, &rep));
        }
        Err(e) => {
            for id in ["fell-unitarity", "fell", "fell-characters"] {
                t.record(id, Level::Direct, Err(e.clone()));
            }
        }
    }

    let ranks: Vec<usize> = g.orbits().iter().map(|_| t.rng.random_range(1..=max_rank)).collect();
    let mixed = random_rep_by_orbit::<f64, _>(&mut t.rng, g, &ranks);
    t.record(
        "rank-decomposition",
        Level::Direct,
        mixed.and_then(|rep| decomposition_residual(fx, &rep)),
    );
    t.finish()
}
