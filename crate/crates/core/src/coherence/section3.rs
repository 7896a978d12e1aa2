//! The `L²` isomorphism of fibre products, its compatibility with the unitors
//! and associators of fusion and of fibre products, and the fusion axioms.

use num_complex::Complex;
use rand::Rng;

use crate::coherence::graded::{lambda_keyed, single, Key, KeyedMap};
use crate::coherence::instances::{
    describe, random_algebra, random_ce, random_hom, random_hom_between, random_module, random_square,
    random_square_over, random_state,
};
use crate::coherence::report::{CheckResult, Family, Level, SuiteConfig};
use crate::coherence::trial::Trial;
use crate::cvna::{
    fibre_associator, fibre_product, fibre_product_map, fibre_unitor, fibre_unitor_left, Algebra, FibreSquare, Hom,
    WDiagram,
};
use crate::error::{Error, Result};
use crate::functors::{restrict, Formalism};
use crate::hmod::{fuse, fuse_maps, fusion_inner_product, l2_of_iso, span_image, span_vector, unitor_l, unitor_r};
use crate::hmod::{Module, ModuleMap};
use crate::linalg::{complex_gaussian, ComplexMatrix};

type Map = ModuleMap<f64>;

/// Largest distance between `Λ(√φ ⊠_μ √ψ)` and `√(μ(φ ⊗ ψ))` over `count`
/// random faithful triples.
pub fn lambda_span_residual<R: Rng + ?Sized>(
    fx: &Formalism,
    sq: &FibreSquare,
    rng: &mut R,
    count: usize,
) -> Result<f64> {
    let lambda = fx.lambda::<f64>(sq)?.to_matrix();
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let phi = random_ce(rng, sq.f(), false);
        let psi = random_ce(rng, sq.g(), false);
        let mu = random_state(rng, sq.c(), true);
        let v = span_vector(&phi, &mu, &psi, sq)?;
        let image = lambda.mul_vec(v.coords())?;
        let expected = span_image(&phi, &mu, &psi, sq)?;
        let d: f64 = image.iter().zip(&expected).map(|(a, b)| (a - b).norm_sqr()).sum();
        worst = worst.max(d.sqrt());
    }
    Ok(worst)
}

/// For a square with `g = id`: `L²(u) ∘ Λ` against the fusion unitor.
pub fn unitor_lemma(fx: &Formalism, sq: &FibreSquare) -> Result<(Map, Map)> {
    let u = fibre_unitor(sq)?;
    let lhs = l2_of_iso(&u, &sq.base_hom())?.compose(&fx.lambda(sq)?)?;
    let rhs = unitor_r(&restrict(sq.f(), &Module::l2(sq.a()))?)?;
    Ok((lhs, rhs))
}

/// `B1 <-l- A -r-> B2 -h-> B3`: the `L²` isomorphism of `B1 ∗_A B3` against
/// the one through `B1 ∗_A B2`. The squares may list their atoms in any order.
pub struct Cospan {
    pub l: Hom,
    pub r: Hom,
    pub h: Hom,
    pub sq13: FibreSquare,
    pub sq12: FibreSquare,
    pub sq123: FibreSquare,
}

impl Cospan {
    pub fn lex(l: &Hom, r: &Hom, h: &Hom) -> Result<Self> {
        let sq12 = fibre_product(l, r)?;
        Ok(Self {
            sq13: fibre_product(l, &Hom::compose(h, r)?)?,
            sq123: fibre_product(sq12.fbar(), h)?,
            sq12,
            l: l.clone(),
            r: r.clone(),
            h: h.clone(),
        })
    }
}

/// Both routes `L²B1 ⊠_A L²B3 -> L²((B1 ∗_A B2) ∗_{B2} B3)`; basis vectors
/// are labeled by leaf triples `(b1, b2, b3)`.
pub fn cospan_lemma(fx: &Formalism, w: &Cospan) -> Result<f64> {
    let h = &w.h;
    let lift = |k: &Key| vec![k[0], h.spec(k[1]), k[1]];
    let top13 = lambda_keyed(fx, &w.sq13, single, single)?;
    let top = KeyedMap::relabel(top13.target().to_vec(), lift).compose(&top13)?;

    let down = KeyedMap::relabel(top13.source().to_vec(), lift);
    let b3_keys: Vec<Key> = (0..h.target().len()).map(single).collect();
    let inner = lambda_keyed(fx, &w.sq12, single, single)?.tensor_id(|k| k[1], &b3_keys, |r| h.spec(r[0]))?;
    let pairs12 = w.sq12.pairs();
    let outer = lambda_keyed(fx, &w.sq123, |p| vec![pairs12[p].0, pairs12[p].1], single)?;
    let bottom = KeyedMap::chain(&[&down, &inner, &outer])?;
    top.distance(&bottom)
}

/// The four squares over a W-shaped diagram `B1 <- A1 -> B2 <- A2 -> B3`.
pub struct WSquares {
    pub w: WDiagram,
    pub sq12: FibreSquare,
    pub sq23: FibreSquare,
    /// `(B1 ∗ B2) ∗ B3`.
    pub left: FibreSquare,
    /// `B1 ∗ (B2 ∗ B3)`.
    pub right: FibreSquare,
}

fn keys_of(sq: &FibreSquare, key_a: impl Fn(usize) -> Key, key_b: impl Fn(usize) -> Key) -> Vec<Key> {
    sq.pairs().iter().map(|&(i, j)| [key_a(i), key_b(j)].concat()).collect()
}

fn pair_key(sq: &FibreSquare) -> impl Fn(usize) -> Key + '_ {
    move |p| {
        let (i, j) = sq.pairs()[p];
        vec![i, j]
    }
}

/// The two routes of the associativity lemma from `L²B1 ⊠ (L²B2 ⊠ L²B3)`,
/// ending in `L²(B1 ∗ (B2 ∗ B3))` and `L²((B1 ∗ B2) ∗ B3)`. With `iso` the
/// first route is continued by `L²` of that isomorphism; without it the two
/// products are identified by leaf triples.
pub fn associator_lemma(fx: &Formalism, s: &WSquares, iso: Option<&Hom>) -> Result<f64> {
    let WDiagram { l1, r1, l2, r2 } = &s.w;
    let b1_keys: Vec<Key> = (0..l1.target().len()).map(single).collect();
    let b3_keys: Vec<Key> = (0..r2.target().len()).map(single).collect();

    let top_inner =
        lambda_keyed(fx, &s.sq23, single, single)?.id_tensor(|k| r1.spec(k[0]), &b1_keys, |l| l1.spec(l[0]))?;
    let top_outer = lambda_keyed(fx, &s.right, single, pair_key(&s.sq23))?;
    let mut top = top_outer.compose(&top_inner)?;
    if let Some(iso) = iso {
        let src = keys_of(&s.right, single, pair_key(&s.sq23));
        let tgt = keys_of(&s.left, pair_key(&s.sq12), single);
        let mut m = ComplexMatrix::zeros(tgt.len(), src.len());
        for q in 0..src.len() {
            m[(iso.spec(q), q)] = Complex::new(1.0, 0.0);
        }
        top = KeyedMap::new(src, tgt, m)?.compose(&top)?;
    }

    let bottom_inner =
        lambda_keyed(fx, &s.sq12, single, single)?.tensor_id(|k| l2.spec(k[1]), &b3_keys, |r| r2.spec(r[0]))?;
    let bottom_outer = lambda_keyed(fx, &s.left, pair_key(&s.sq12), single)?;
    let bottom = bottom_outer.compose(&bottom_inner)?;
    top.distance(&bottom)
}

/// Number of atoms on which two homomorphisms disagree.
fn spec_mismatch(x: &Hom, y: &Hom) -> Result<f64> {
    if x.source() != y.source() || x.target() != y.target() {
        return Err(Error::MalformedSquare("routes end in different algebras".into()));
    }
    Ok(x.spec_map().iter().zip(y.spec_map()).filter(|(a, b)| a != b).count() as f64)
}

/// Pentagon for fibre products of four algebras `B1 .. B4` glued along
/// `l[k]: A_k -> B_k`, `r[k]: A_k -> B_{k+1}`. Returns the number of atoms
/// where the two routes disagree.
pub fn fibre_pentagon(l: &[Hom; 3], r: &[Hom; 3]) -> Result<f64> {
    let p12 = fibre_product(&l[0], &r[0])?;
    let p23 = fibre_product(&l[1], &r[1])?;
    let p34 = fibre_product(&l[2], &r[2])?;
    let a = fibre_associator(&WDiagram::new(
        Hom::compose(p12.fbar(), &l[1])?,
        r[1].clone(),
        l[2].clone(),
        r[2].clone(),
    )?)?;
    let b = fibre_associator(&WDiagram::new(
        l[0].clone(),
        r[0].clone(),
        l[1].clone(),
        Hom::compose(p34.gbar(), &r[1])?,
    )?)?;
    let c = fibre_associator(&WDiagram::new(l[0].clone(), r[0].clone(), l[1].clone(), r[1].clone())?)?;
    let d = fibre_associator(&WDiagram::new(
        l[0].clone(),
        Hom::compose(p23.gbar(), &r[0])?,
        Hom::compose(p23.fbar(), &l[2])?,
        r[2].clone(),
    )?)?;
    let e = fibre_associator(&WDiagram::new(l[1].clone(), r[1].clone(), l[2].clone(), r[2].clone())?)?;
    let c_whiskered = fibre_product_map(&a.left_outer, &d.left_outer, &c.iso, &Hom::identity(r[2].target()))?;
    let e_whiskered = fibre_product_map(&d.right_outer, &b.right_outer, &Hom::identity(l[0].target()), &e.iso)?;
    let direct = Hom::compose(&b.iso, &a.iso)?;
    let around = Hom::compose(&e_whiskered, &Hom::compose(&d.iso, &c_whiskered)?)?;
    spec_mismatch(&direct, &around)
}

/// Triangle for `B1 <-l- A -r-> B2` with the unit `A` in the middle.
pub fn fibre_triangle(l: &Hom, r: &Hom) -> Result<f64> {
    let e = Hom::identity(l.source());
    let fa = fibre_associator(&WDiagram::new(l.clone(), e.clone(), e, r.clone())?)?;
    let x = fibre_product(l, r)?;
    let rho = fibre_product_map(
        &fa.left_outer,
        &x,
        &fibre_unitor(&fa.left_inner)?,
        &Hom::identity(r.target()),
    )?;
    let lambda = fibre_product_map(
        &fa.right_outer,
        &x,
        &Hom::identity(l.target()),
        &fibre_unitor_left(&fa.right_inner)?,
    )?;
    spec_mismatch(&Hom::compose(&lambda, &fa.iso)?, &rho)
}

pub fn fusion_pentagon(fx: &Formalism, m: &Module, n: &Module, p: &Module, q: &Module) -> Result<(Map, Map)> {
    let id = |x: &Module| Map::identity(x);
    let lhs = fx
        .associator(m, n, &fuse(p, q)?)?
        .compose(&fx.associator(&fuse(m, n)?, p, q)?)?;
    let rhs = Map::chain(&[
        &fuse_maps(&fx.associator(m, n, p)?, &id(q))?,
        &fx.associator(m, &fuse(n, p)?, q)?,
        &fuse_maps(&id(m), &fx.associator(n, p, q)?)?,
    ])?;
    Ok((lhs, rhs))
}

pub fn fusion_triangle(fx: &Formalism, m: &Module, n: &Module) -> Result<(Map, Map)> {
    let l2 = Module::l2(m.algebra());
    let lhs = fuse_maps(&Map::identity(m), &unitor_l(n)?)?.compose(&fx.associator(m, &l2, n)?)?;
    let rhs = fuse_maps(&unitor_r(m)?, &Map::identity(n))?;
    Ok((lhs, rhs))
}

/// The fusion inner product of two elementary tensors against the inner
/// product of their Kronecker vectors.
pub fn inner_product_residual<R: Rng + ?Sized>(rng: &mut R, dm: usize, dn: usize) -> Result<f64> {
    let mut v = || {
        (0..dm)
            .map(|_| complex_gaussian::<f64, _>(rng))
            .collect::<Vec<Complex<f64>>>()
    };
    let (m1, m2) = (v(), v());
    let mut w = || {
        (0..dn)
            .map(|_| complex_gaussian::<f64, _>(rng))
            .collect::<Vec<Complex<f64>>>()
    };
    let (n1, n2) = (w(), w());
    let fused = fusion_inner_product(&m1, &n1, &m2, &n2)?;
    let mut direct = Complex::new(0.0, 0.0);
    for k in 0..dm {
        for l in 0..dn {
            direct += m1[k] * n1[l] * (m2[k] * n2[l]).conj();
        }
    }
    Ok((fused - direct).norm())
}

fn random_w<R: Rng + ?Sized>(rng: &mut R, na: usize) -> WDiagram {
    loop {
        let (a1, a2) = (random_algebra(rng, na), random_algebra(rng, na));
        let (b1, b2, b3) = (
            random_algebra(rng, na),
            random_algebra(rng, na),
            random_algebra(rng, na),
        );
        let w = WDiagram::new(
            random_hom_between(rng, &a1, &b1),
            random_hom_between(rng, &a1, &b2),
            random_hom_between(rng, &a2, &b2),
            random_hom_between(rng, &a2, &b3),
        )
        .expect("legs share sources");
        if fibre_associator(&w).is_ok() {
            return w;
        }
    }
}

fn shuffled_w_squares<R: Rng + ?Sized>(rng: &mut R, w: &WDiagram) -> Result<WSquares> {
    let sq12 = random_square(rng, &w.l1, &w.r1)?;
    let sq23 = random_square(rng, &w.l2, &w.r2)?;
    let left = random_square(rng, &Hom::compose(sq12.fbar(), &w.l2)?, &w.r2)?;
    let right = random_square(rng, &w.l1, &Hom::compose(sq23.gbar(), &w.r1)?)?;
    Ok(WSquares {
        w: w.clone(),
        sq12,
        sq23,
        left,
        right,
    })
}

fn random_cospan<R: Rng + ?Sized>(rng: &mut R, na: usize) -> Cospan {
    loop {
        let a = random_algebra(rng, na);
        let l = random_hom(rng, &a, na);
        let r = random_hom(rng, &a, na);
        let h = random_hom(rng, r.target(), na);
        let built = (|| -> Result<Cospan> {
            let sq12 = random_square(rng, &l, &r)?;
            Ok(Cospan {
                sq13: random_square(rng, &l, &Hom::compose(&h, &r)?)?,
                sq123: random_square(rng, sq12.fbar(), &h)?,
                sq12,
                l: l.clone(),
                r: r.clone(),
                h: h.clone(),
            })
        })();
        if let Ok(c) = built {
            return c;
        }
    }
}

fn random_chain<R: Rng + ?Sized>(rng: &mut R, na: usize) -> ([Hom; 3], [Hom; 3]) {
    loop {
        let b: Vec<Algebra> = (0..4).map(|_| random_algebra(rng, na)).collect();
        let a: Vec<Algebra> = (0..3).map(|_| random_algebra(rng, na)).collect();
        let l = [0, 1, 2].map(|k| random_hom_between(rng, &a[k], &b[k]));
        let r = [0, 1, 2].map(|k| random_hom_between(rng, &a[k], &b[k + 1]));
        if fibre_pentagon(&l, &r).is_ok() {
            return (l, r);
        }
    }
}

pub(crate) fn run_trial(fx: &Formalism, cfg: &SuiteConfig, index: usize) -> Vec<CheckResult> {
    let mut t = Trial::new(Family::Section3, cfg, index);
    let (na, nd) = (cfg.max_atoms, cfg.max_fiber_dim);

    let c = random_algebra(&mut t.rng, na);
    let sq = random_square_over(&mut t.rng, &c, na).expect("retries until nonempty");
    t.set_dims(format!(
        "A={} B={} C={} pairs={}",
        sq.a().len(),
        sq.b().len(),
        c.len(),
        sq.pairs().len()
    ));
    t.unitary("prop-lambda", Level::Generator, fx.lambda(&sq));
    let span = lambda_span_residual(fx, &sq, &mut t.rng, 20);
    t.record("prop-lambda-span", Level::Generator, span);

    let c = random_algebra(&mut t.rng, na);
    let f = random_hom(&mut t.rng, &c, na);
    let sq = random_square(&mut t.rng, &f, &Hom::identity(&c)).expect("g = id always has pairs");
    t.set_dims(format!("A={} C={}", f.target().len(), c.len()));
    t.diagram("lemma-unitor", Level::Generator, unitor_lemma(fx, &sq));

    let cospan = random_cospan(&mut t.rng, na);
    t.set_dims(format!(
        "B1={} A={} B2={} B3={}",
        cospan.l.target().len(),
        cospan.l.source().len(),
        cospan.r.target().len(),
        cospan.h.target().len()
    ));
    t.record("lemma-w-diagram", Level::Generator, cospan_lemma(fx, &cospan));

    let w = random_w(&mut t.rng, na);
    t.set_dims(format!(
        "B=({},{},{}) A=({},{})",
        w.l1.target().len(),
        w.r1.target().len(),
        w.r2.target().len(),
        w.l1.source().len(),
        w.l2.source().len()
    ));
    let shuffled = shuffled_w_squares(&mut t.rng, &w);
    t.record(
        "lemma-sass",
        Level::Generator,
        shuffled.and_then(|s| associator_lemma(fx, &s, None)),
    );
    let lex = fibre_associator(&w).and_then(|fa| {
        let s = WSquares {
            w: w.clone(),
            sq12: fa.left_inner.clone(),
            sq23: fa.right_inner.clone(),
            left: fa.left_outer.clone(),
            right: fa.right_outer.clone(),
        };
        associator_lemma(fx, &s, Some(&fa.iso))
    });
    t.record("lemma-sass", Level::Direct, lex);
    let legs = fibre_associator(&w).and_then(|fa| fa.commutes_with_legs());
    t.record(
        "fibre-associator",
        Level::Direct,
        legs.map(|ok| if ok { 0.0 } else { 1.0 }),
    );

    let (l, r) = random_chain(&mut t.rng, na);
    t.set_dims(format!(
        "B=({},{},{},{})",
        l[0].target().len(),
        l[1].target().len(),
        l[2].target().len(),
        r[2].target().len()
    ));
    t.record("fibre-pentagon", Level::Direct, fibre_pentagon(&l, &r));
    let (l1, r1) = loop {
        let a = random_algebra(&mut t.rng, na);
        let (l1, r1) = (random_hom(&mut t.rng, &a, na), random_hom(&mut t.rng, &a, na));
        if fibre_product(&l1, &r1).is_ok() {
            break (l1, r1);
        }
    };
    t.record("fibre-triangle", Level::Direct, fibre_triangle(&l1, &r1));

    let a = random_algebra(&mut t.rng, na);
    let ms: Vec<Module> = (0..4).map(|_| random_module(&mut t.rng, &a, nd)).collect();
    t.set_dims(describe(&[("M", &ms[0]), ("N", &ms[1]), ("P", &ms[2]), ("Q", &ms[3])]));
    t.diagram(
        "fusion-pentagon",
        Level::Extended,
        fusion_pentagon(fx, &ms[0], &ms[1], &ms[2], &ms[3]),
    );
    t.diagram("fusion-triangle", Level::Extended, fusion_triangle(fx, &ms[0], &ms[1]));
    let (dm, dn) = (t.rng.random_range(1..=nd.max(1)), t.rng.random_range(1..=nd.max(1)));
    let ip = inner_product_residual(&mut t.rng, dm, dn);
    t.record("fusion-inner-product", Level::Direct, ip);
    t.finish()
}
