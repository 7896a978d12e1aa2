use crate::cvna::{check_algebra, Hom};
use crate::error::Result;
use crate::hmod::{Module, ModuleMap};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// `res_f M` for `f: B -> A`: fiber `j` is `⊕_{spec(i) = j} M_i`, `i` ascending.
pub fn restrict(f: &Hom, m: &Module) -> Result<Module> {
    check_algebra(f.target(), m.algebra())?;
    Module::new(
        f.source(),
        f.fibers()
            .iter()
            .map(|fib| fib.iter().map(|&i| m.dim(i)).sum())
            .collect(),
    )
}

pub fn restrict_map<T: Real>(f: &Hom, h: &ModuleMap<T>) -> Result<ModuleMap<T>> {
    let source = restrict(f, h.source())?;
    let target = restrict(f, h.target())?;
    let blocks = f
        .fibers()
        .iter()
        .map(|fib| ComplexMatrix::direct_sum(fib.iter().map(|&i| h.block(i))))
        .collect();
    ModuleMap::new(&source, &target, blocks)
}

/// `res_id M -> M`.
pub fn res_identitor<T: Real>(m: &Module) -> Result<ModuleMap<T>> {
    let id = Hom::identity(m.algebra());
    ModuleMap::from_index_map(&restrict(&id, m)?, m, |_, k| k)
}

/// `res_g res_f M -> res_{f∘g} M` for `g: C -> B`, `f: B -> A`.
///
/// The source lists `M_i` grouped by the intermediate atom `j`, the target by
/// ascending `i`, so this is a genuine permutation when `f` is not monotone.
pub fn res_compositor<T: Real>(f: &Hom, g: &Hom, m: &Module) -> Result<ModuleMap<T>> {
    let fg = Hom::compose(f, g)?;
    let source = restrict(g, &restrict(f, m)?)?;
    let target = restrict(&fg, m)?;
    let f_fibers = f.fibers();
    let images: Vec<Vec<usize>> = g
        .fibers()
        .iter()
        .zip(fg.fibers())
        .map(|(g_fib, fg_fib)| {
            let mut start = vec![0; m.algebra().len()];
            let mut acc = 0;
            for &i in &fg_fib {
                start[i] = acc;
                acc += m.dim(i);
            }
            let start = &start;
            g_fib
                .iter()
                .flat_map(|&j| f_fibers[j].iter())
                .flat_map(|&i| (0..m.dim(i)).map(move |k| start[i] + k))
                .collect()
        })
        .collect();
    ModuleMap::from_index_map(&source, &target, |c, k| images[c][k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvna::Algebra;

    #[test]
    fn fiber_sums() {
        let b = Algebra::standard(2);
        let a = Algebra::standard(3);
        let f = Hom::new(&b, &a, vec![0, 0, 1]).unwrap();
        let m = Module::new(&a, vec![1, 2, 3]).unwrap();
        assert_eq!(restrict(&f, &m).unwrap().dims(), &[3, 3]);
        let id = Hom::identity(&a);
        assert_eq!(restrict(&id, &m).unwrap(), m);
    }

    #[test]
    fn compositor_permutes_non_monotone_fibers() {
        let c = Algebra::standard(1);
        let b = Algebra::standard(2);
        let a = Algebra::standard(3);
        let f = Hom::new(&b, &a, vec![1, 0, 1]).unwrap();
        let g = Hom::from_scalars(&b);
        let m = Module::new(&a, vec![1, 2, 1]).unwrap();
        let comp = res_compositor::<f64>(&f, &g, &m).unwrap();
        // Source order: M_1 (from j = 0), then M_0, M_2 (from j = 1).
        assert_eq!(comp.block(0), &ComplexMatrix::permutation(&[1, 2, 0, 3]).unwrap());
        assert_eq!(comp.source().algebra(), &c);
    }
}
