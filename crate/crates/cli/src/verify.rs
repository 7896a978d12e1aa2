//! Checks run on the objects of an instance document.

use num_complex::Complex;
use threefold::coherence::{
    character_defect, dual_base_change, phi_dual, positivity_defect, sqrt_roundtrip, CheckResult, Family, Level,
};
use threefold::cvna::{ce_identity_check, mu_independence_check, AlgebraElement, State};
use threefold::functors::Formalism;
use threefold::groupoid::{decompose_by_rank, fell_check, regular_rep_with};
use threefold::hmod::{Module, ModuleMap};
use threefold::linalg::Tolerance;

use crate::document::Instances;

type Sides = threefold::Result<(ModuleMap<f64>, ModuleMap<f64>)>;

struct Collector {
    tol: Tolerance,
    results: Vec<CheckResult>,
}

impl Collector {
    fn push(&mut self, id: &str, family: Family, dims: String, value: threefold::Result<(f64, usize, usize)>) {
        let (residual, passed, error) = match value {
            Ok((r, rows, cols)) => (r, self.tol.accepts(r, rows, cols), None),
            Err(threefold::Error::NotEquivariant { defect }) => (defect, false, Some(format!("defect {defect:.3e}"))),
            Err(e) => (f64::INFINITY, false, Some(e.to_string())),
        };
        self.results.push(CheckResult {
            check_id: id.to_string(),
            family,
            level: Level::Direct,
            instance_seed: 0,
            residual,
            passed,
            dims,
            error,
        });
    }

    fn record(&mut self, id: &str, family: Family, dims: String, value: threefold::Result<f64>) {
        self.push(id, family, dims, value.map(|r| (r, 0, 0)));
    }

    fn diagram(&mut self, id: &str, family: Family, dims: String, sides: Sides) {
        let value = sides.and_then(|(l, r)| Ok((l.distance(&r)?, l.target().total_dim(), l.source().total_dim())));
        self.push(id, family, dims, value);
    }

    fn unitary(&mut self, id: &str, family: Family, dims: String, map: threefold::Result<ModuleMap<f64>>) {
        let value = map.and_then(|u| Ok((u.unitarity_residual()?, u.source().total_dim(), u.source().total_dim())));
        self.push(id, family, dims, value);
    }
}

/// Modules of the document over `algebra`, plus its standard form.
fn modules_over(inst: &Instances, algebra: &threefold::cvna::Algebra) -> Vec<(String, Module)> {
    let mut out = vec![("L2".to_string(), Module::l2(algebra))];
    out.extend(
        inst.modules
            .iter()
            .filter(|(_, m)| m.algebra() == algebra)
            .map(|(n, m)| (n.clone(), m.clone())),
    );
    out
}

/// Runs the checks that apply to each object of the document.
pub fn check_document(inst: &Instances, fx: &Formalism, tol: Tolerance) -> Vec<CheckResult> {
    let mut c = Collector {
        tol,
        results: Vec::new(),
    };

    for (name, phi) in &inst.cond_exps {
        let dims = format!("conditional expectation {name}");
        c.record("sqrt-roundtrip", Family::Sqrt, dims.clone(), sqrt_roundtrip(phi));
        let a = phi.hom().target();
        let worst = (0..a.len())
            .map(|i| {
                let e: Vec<f64> = (0..a.len()).map(|k| if k == i { 1.0 } else { 0.0 }).collect();
                ce_identity_check(phi, &AlgebraElement::from_real(a, &e)?)
            })
            .try_fold(0.0_f64, |acc, r| r.map(|r| acc.max(r)));
        c.record("ce-identity", Family::Sqrt, dims.clone(), worst);
        c.record(
            "ce-positivity",
            Family::Sqrt,
            dims.clone(),
            positivity_defect(phi, &a.unit()),
        );
        let b = phi.hom().source();
        let uniform = State::new(b, vec![1.0; b.len()]);
        let mut states: Vec<(&String, &State<f64>)> = inst.states.iter().filter(|(_, s)| s.algebra() == b).collect();
        states.retain(|(_, s)| s.is_faithful());
        if let Ok(uniform) = &uniform {
            for (state, mu) in states {
                c.record(
                    "mu-independence",
                    Family::Sqrt,
                    format!("{dims} against state {state}"),
                    mu_independence_check(phi, uniform, mu),
                );
            }
        }
    }

    for (name, sq) in &inst.squares {
        let dims = format!("square {name}");
        c.unitary("prop-lambda", Family::Section3, dims.clone(), fx.lambda(sq));
        for (m, module) in modules_over(inst, sq.b()) {
            c.unitary(
                "base-change-unitarity",
                Family::BaseChange,
                format!("{dims} at {m}"),
                fx.base_change_iso(sq, &module),
            );
        }
        c.diagram(
            "def2.6-base-change",
            Family::Involutive,
            dims,
            dual_base_change(fx, sq, &Module::l2(sq.b())),
        );
    }

    for (name, f) in &inst.homs {
        for (m, mm) in modules_over(inst, f.target()) {
            for (n, nn) in modules_over(inst, f.source()) {
                c.unitary(
                    "projection-unitarity",
                    Family::Projection,
                    format!("hom {name} at ({m}, {n})"),
                    fx.projection_iso(f, &mm, &nn),
                );
            }
        }
    }

    for (name, m) in &inst.modules {
        c.diagram(
            "def2.6-phi-dual",
            Family::Involutive,
            format!("module {name}"),
            phi_dual(fx, m),
        );
    }

    for (name, h) in &inst.module_maps {
        let dims = format!("module map {name}");
        let back = fx.dual_map(&fx.dual_map(h));
        c.diagram(
            "def2.7-dual-functor",
            Family::Involutive,
            dims.clone(),
            Ok((back, h.clone())),
        );
        let i = Complex::new(0.0, 1.0);
        c.diagram(
            "dual-linear",
            Family::Involutive,
            dims,
            Ok((fx.dual_map(&h.scale(i)), fx.dual_map(h).scale(i))),
        );
    }

    for (name, g) in &inst.groupoids {
        let dims = format!("groupoid {name}");
        let regular = regular_rep_with::<f64>(fx, g);
        c.record(
            "regular-cocycle",
            Family::Fell,
            dims.clone(),
            regular
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|r| r.cocycle_residual()),
        );
        c.record(
            "regular-unitarity",
            Family::Fell,
            dims,
            regular.and_then(|r| Ok(r.unitarity_residual()?.max(r.identity_residual()?))),
        );
    }

    for (name, rep) in &inst.representations {
        let dims = format!("representation {name}");
        if rep.rank().is_some() {
            let r = fell_check(fx, rep);
            c.record(
                "fell-unitarity",
                Family::Fell,
                dims.clone(),
                r.as_ref().map(|r| r.unitarity).map_err(Clone::clone),
            );
            c.record("fell", Family::Fell, dims.clone(), r.map(|r| r.intertwiner));
            c.record("fell-characters", Family::Fell, dims.clone(), character_defect(fx, rep));
        }
        let parts = decompose_by_rank(rep).and_then(|parts| {
            parts.iter().try_fold(0.0_f64, |acc, p| {
                let r = fell_check(fx, &p.rep)?;
                Ok(acc.max(r.unitarity).max(r.intertwiner))
            })
        });
        c.record("rank-decomposition", Family::Fell, dims, parts);
    }
    c.results
}
