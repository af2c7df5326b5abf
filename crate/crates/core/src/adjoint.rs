//! Adjunctions as unit/counit data, the hom-setoid bijection derived from
//! them, mates, adjoint equivalences and induced monads.

use crate::error::{Error, Result};
use crate::report::LawReport;
use crate::transfor::{
    check_functor, check_natural, compose_functor, is_natural_iso, same_category, Cat, FinFunctor,
    Monad, NatTrans,
};

/// `F ⊣ G` with `F : C → D`, unit `id_C ⇒ G F` and counit `F G ⇒ id_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    left: FinFunctor,
    right: FinFunctor,
    unit: NatTrans,
    counit: NatTrans,
}

impl Adjunction {
    pub fn new(
        left: FinFunctor,
        right: FinFunctor,
        unit: NatTrans,
        counit: NatTrans,
    ) -> Result<Self> {
        if !same_category(left.source(), right.target())
            || !same_category(left.target(), right.source())
        {
            return Err(Error::Mismatch(
                "adjoint functors must run in opposite directions".into(),
            ));
        }
        let gf = compose_functor(&right, &left)?;
        let fg = compose_functor(&left, &right)?;
        if *unit.source() != FinFunctor::identity(left.source()) || *unit.target() != gf {
            return Err(Error::Mismatch(
                "unit must go from the identity to G.F".into(),
            ));
        }
        if *counit.source() != fg || *counit.target() != FinFunctor::identity(left.target()) {
            return Err(Error::Mismatch(
                "counit must go from F.G to the identity".into(),
            ));
        }
        Ok(Adjunction {
            left,
            right,
            unit,
            counit,
        })
    }

    pub fn identity(c: &Cat) -> Self {
        let id = FinFunctor::identity(c);
        let t = NatTrans::identity(&id);
        Adjunction {
            left: id.clone(),
            right: id,
            unit: t.clone(),
            counit: t,
        }
    }

    /// Builds `F ⊣ G` from object maps, taking the least arrow wherever a
    /// component or arrow image is needed. Exact for thin categories, i.e.
    /// Galois connections.
    pub fn from_object_maps(c: &Cat, d: &Cat, left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        let f = FinFunctor::from_object_map(c, d, left)?;
        let g = FinFunctor::from_object_map(d, c, right)?;
        Self::with_least_components(f, g)
    }

    /// Unit and counit made of least arrows of the required hom-sets.
    pub fn with_least_components(f: FinFunctor, g: FinFunctor) -> Result<Self> {
        let (c, d) = (f.source().clone(), f.target().clone());
        let unit_comps = (0..c.num_objects())
            .map(|x| {
                c.hom(x, g.obj(f.obj(x))).first().copied().ok_or_else(|| {
                    Error::Typing(format!("no unit component at {}", c.object_name(x)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let counit_comps = (0..d.num_objects())
            .map(|y| {
                d.hom(f.obj(g.obj(y)), y).first().copied().ok_or_else(|| {
                    Error::Typing(format!("no counit component at {}", d.object_name(y)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = NatTrans::new(
            FinFunctor::identity(&c),
            compose_functor(&g, &f)?,
            unit_comps,
        )?;
        let counit = NatTrans::new(
            compose_functor(&f, &g)?,
            FinFunctor::identity(&d),
            counit_comps,
        )?;
        Adjunction::new(f, g, unit, counit)
    }

    pub fn left(&self) -> &FinFunctor {
        &self.left
    }

    pub fn right(&self) -> &FinFunctor {
        &self.right
    }

    pub fn unit(&self) -> &NatTrans {
        &self.unit
    }

    pub fn counit(&self) -> &NatTrans {
        &self.counit
    }

    /// The category `C` the left adjoint starts from.
    pub fn domain(&self) -> &Cat {
        self.left.source()
    }

    /// The category `D` the left adjoint lands in.
    pub fn codomain(&self) -> &Cat {
        self.left.target()
    }

    pub fn check_laws(&self) -> LawReport {
        check_adjunction(self)
    }

    /// Same functors, replaced components. For perturbation.
    pub fn with_components(&self, unit: Vec<usize>, counit: Vec<usize>) -> Result<Self> {
        let u = NatTrans::new(self.unit.source().clone(), self.unit.target().clone(), unit)?;
        let e = NatTrans::new(
            self.counit.source().clone(),
            self.counit.target().clone(),
            counit,
        )?;
        Adjunction::new(self.left.clone(), self.right.clone(), u, e)
    }
}

/// Triangle identities at every object, plus the laws of the parts.
pub fn check_adjunction(a: &Adjunction) -> LawReport {
    let mut report = LawReport::new();
    report.absorb("F", check_functor(&a.left));
    report.absorb("G", check_functor(&a.right));
    report.absorb("unit", check_natural(&a.unit));
    report.absorb("counit", check_natural(&a.counit));
    let (c, d) = (a.domain(), a.codomain());
    for x in 0..c.num_objects() {
        let fx = a.left.obj(x);
        let zig = d.composite(a.counit.component(fx), a.left.arr(a.unit.component(x)));
        if !matches!(zig, Some(h) if d.equiv(h, d.identity(fx))) {
            report.push(
                "zig",
                vec![x],
                format!("ε_F.F(η) is not the identity at {}", c.object_name(x)),
            );
        }
    }
    for y in 0..d.num_objects() {
        let gy = a.right.obj(y);
        let zag = c.composite(a.right.arr(a.counit.component(y)), a.unit.component(gy));
        if !matches!(zag, Some(h) if c.equiv(h, c.identity(gy))) {
            report.push(
                "zag",
                vec![y],
                format!("G(ε).η_G is not the identity at {}", d.object_name(y)),
            );
        }
    }
    report
}

/// One component of a hom bijection: class representatives on each side
/// and the class-level maps between them (as positions in those lists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomIsoComponent {
    pub x: usize,
    pub y: usize,
    /// Representatives of the classes of `Hom_D(F x, y)`.
    pub left_classes: Vec<usize>,
    /// Representatives of the classes of `Hom_C(x, G y)`.
    pub right_classes: Vec<usize>,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

/// `Hom_D(F x, y) ≅ Hom_C(x, G y)` on `≈`-classes, for every `x`, `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomIsoFamily {
    pub left: FinFunctor,
    pub right: FinFunctor,
    /// Indexed `x * |D| + y`.
    pub components: Vec<HomIsoComponent>,
}

impl HomIsoFamily {
    pub fn component(&self, x: usize, y: usize) -> &HomIsoComponent {
        &self.components[x * self.left.target().num_objects() + y]
    }

    /// Representative of `φ(g)` for `g : F x → y`.
    pub fn phi(&self, x: usize, y: usize, g: usize) -> Option<usize> {
        let d = self.left.target();
        let k = self.component(x, y);
        let i = k.left_classes.iter().position(|&r| r == d.eq_class(g))?;
        k.right_classes.get(*k.forward.get(i)?).copied()
    }

    /// Representative of `φ⁻¹(f)` for `f : x → G y`.
    pub fn psi(&self, x: usize, y: usize, f: usize) -> Option<usize> {
        let c = self.left.source();
        let k = self.component(x, y);
        let j = k.right_classes.iter().position(|&r| r == c.eq_class(f))?;
        k.left_classes.get(*k.backward.get(j)?).copied()
    }
}

/// `φ(g) = G g ∘ η_x` and `ψ(f) = ε_y ∘ F f`, on classes.
pub fn hom_iso_of_adjunction(a: &Adjunction) -> Result<HomIsoFamily> {
    let report = check_adjunction(a);
    if !report.passed {
        return Err(Error::Laws(report));
    }
    let fam = raw_hom_iso(a)?;
    verify_hom_iso(&fam).map_err(|e| Error::Internal(format!("derived hom bijection: {e}")))?;
    Ok(fam)
}

fn raw_hom_iso(a: &Adjunction) -> Result<HomIsoFamily> {
    let (c, d) = (a.domain().clone(), a.codomain().clone());
    let mut components = Vec::with_capacity(c.num_objects() * d.num_objects());
    for x in 0..c.num_objects() {
        for y in 0..d.num_objects() {
            let (fx, gy) = (a.left.obj(x), a.right.obj(y));
            let left_classes = d.hom_classes(fx, y);
            let right_classes = c.hom_classes(x, gy);
            let forward = left_classes
                .iter()
                .map(|&g| {
                    let img = c.compose(a.right.arr(g), a.unit.component(x))?;
                    right_classes
                        .iter()
                        .position(|&r| r == c.eq_class(img))
                        .ok_or_else(|| Error::Internal("φ left its hom-set".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let backward = right_classes
                .iter()
                .map(|&f| {
                    let img = d.compose(a.counit.component(y), a.left.arr(f))?;
                    left_classes
                        .iter()
                        .position(|&r| r == d.eq_class(img))
                        .ok_or_else(|| Error::Internal("ψ left its hom-set".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(HomIsoComponent {
                x,
                y,
                left_classes,
                right_classes,
                forward,
                backward,
            });
        }
    }
    Ok(HomIsoFamily {
        left: a.left.clone(),
        right: a.right.clone(),
        components,
    })
}

/// Bijectivity and naturality in both variables, every instance.
pub fn check_hom_iso(fam: &HomIsoFamily) -> Result<LawReport> {
    let (c, d) = (fam.left.source().clone(), fam.left.target().clone());
    if fam.components.len() != c.num_objects() * d.num_objects() {
        return Err(Error::Structure(
            "hom family has the wrong number of components".into(),
        ));
    }
    for k in &fam.components {
        let (fx, gy) = (fam.left.obj(k.x), fam.right.obj(k.y));
        if k.left_classes != d.hom_classes(fx, k.y) || k.right_classes != c.hom_classes(k.x, gy) {
            return Err(Error::Structure(format!(
                "component ({}, {}) does not list the class representatives of its hom-sets",
                k.x, k.y
            )));
        }
        if k.forward.len() != k.left_classes.len()
            || k.backward.len() != k.right_classes.len()
            || k.forward.iter().any(|&j| j >= k.right_classes.len())
            || k.backward.iter().any(|&i| i >= k.left_classes.len())
        {
            return Err(Error::Structure(format!(
                "component ({}, {}) has maps of the wrong shape",
                k.x, k.y
            )));
        }
    }

    let mut report = LawReport::new();
    for k in &fam.components {
        let inverse = k
            .forward
            .iter()
            .enumerate()
            .all(|(i, &j)| k.backward[j] == i)
            && k.backward
                .iter()
                .enumerate()
                .all(|(j, &i)| k.forward[i] == j);
        if !inverse {
            report.push(
                "hom-iso-bijection",
                vec![k.x, k.y],
                format!(
                    "maps at ({}, {}) are not mutually inverse",
                    c.object_name(k.x),
                    d.object_name(k.y)
                ),
            );
        }
    }
    // naturality in x: φ(g ∘ F h) ≈ φ(g) ∘ h for h : x' → x
    for h in 0..c.num_arrows() {
        let (x2, x) = (c.source(h), c.target(h));
        for y in 0..d.num_objects() {
            for &g in &fam.component(x, y).left_classes {
                let Some(g_fh) = d.composite(g, fam.left.arr(h)) else {
                    continue;
                };
                let lhs = fam.phi(x2, y, g_fh);
                let rhs = fam.phi(x, y, g).and_then(|p| c.composite(p, h));
                if !matches!((lhs, rhs), (Some(l), Some(r)) if c.equiv(l, r)) {
                    report.push(
                        "hom-iso-natural-x",
                        vec![h, y, g],
                        format!(
                            "square for {} at {} fails on {}",
                            c.label(h),
                            d.object_name(y),
                            d.label(g)
                        ),
                    );
                }
            }
        }
    }
    // naturality in y: φ(k ∘ g) ≈ G k ∘ φ(g) for k : y → y'
    for kk in 0..d.num_arrows() {
        let (y, y2) = (d.source(kk), d.target(kk));
        for x in 0..c.num_objects() {
            for &g in &fam.component(x, y).left_classes {
                let Some(kg) = d.composite(kk, g) else {
                    continue;
                };
                let lhs = fam.phi(x, y2, kg);
                let rhs = fam
                    .phi(x, y, g)
                    .and_then(|p| c.composite(fam.right.arr(kk), p));
                if !matches!((lhs, rhs), (Some(l), Some(r)) if c.equiv(l, r)) {
                    report.push(
                        "hom-iso-natural-y",
                        vec![kk, x, g],
                        format!(
                            "square for {} at {} fails on {}",
                            d.label(kk),
                            c.object_name(x),
                            d.label(g)
                        ),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Like [`check_hom_iso`], but fails with the first offending square.
pub fn verify_hom_iso(fam: &HomIsoFamily) -> Result<()> {
    let report = check_hom_iso(fam)?;
    match report.violations.first() {
        None => Ok(()),
        Some(v) if v.law == "hom-iso-bijection" => Err(Error::NotBijective(v.description.clone())),
        Some(v) => Err(Error::NotNatural {
            arrow: v.indices[0],
            description: format!("{}: {}", v.law, v.description),
        }),
    }
}

/// Unit and counit read off a natural hom bijection: `η_x` represents
/// `φ(id_{F x})`, `ε_y` represents `φ⁻¹(id_{G y})`.
pub fn adjunction_of_hom_iso(
    f: &FinFunctor,
    g: &FinFunctor,
    phi: &HomIsoFamily,
) -> Result<Adjunction> {
    if phi.left != *f || phi.right != *g {
        return Err(Error::Mismatch(
            "hom family is for different functors".into(),
        ));
    }
    verify_hom_iso(phi)?;
    let (c, d) = (f.source().clone(), f.target().clone());
    let unit = (0..c.num_objects())
        .map(|x| {
            let fx = f.obj(x);
            phi.phi(x, fx, d.identity(fx))
                .ok_or_else(|| Error::Internal("identity class missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let counit = (0..d.num_objects())
        .map(|y| {
            let gy = g.obj(y);
            phi.psi(gy, y, c.identity(gy))
                .ok_or_else(|| Error::Internal("identity class missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = NatTrans::new(FinFunctor::identity(&c), compose_functor(g, f)?, unit)?;
    let counit = NatTrans::new(compose_functor(f, g)?, FinFunctor::identity(&d), counit)?;
    let a = Adjunction::new(f.clone(), g.clone(), unit, counit)?;
    let report = check_adjunction(&a);
    if !report.passed {
        return Err(Error::Laws(report));
    }
    Ok(a)
}

/// Two adjunctions `F ⊣ G`, `F' ⊣ G'` over the same categories with
/// `α : F ⇒ F'` and `β : G' ⇒ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MateSetup {
    pub first: Adjunction,
    pub second: Adjunction,
    pub alpha: NatTrans,
    pub beta: NatTrans,
}

impl MateSetup {
    pub fn new(
        first: Adjunction,
        second: Adjunction,
        alpha: NatTrans,
        beta: NatTrans,
    ) -> Result<Self> {
        if *alpha.source() != first.left || *alpha.target() != second.left {
            return Err(Error::Typing("α must go from F to F'".into()));
        }
        if *beta.source() != second.right || *beta.target() != first.right {
            return Err(Error::Typing("β must go from G' to G".into()));
        }
        Ok(MateSetup {
            first,
            second,
            alpha,
            beta,
        })
    }
}

/// `G α ∘ η ≈ β F' ∘ η'` at every object of `C` and
/// `ε' ∘ α G' ≈ ε ∘ F β` at every object of `D`. Both adjunctions are
/// assumed lawful; naturality of `α` and `β` is checked.
pub fn check_mate_unit_counit(m: &MateSetup) -> LawReport {
    let mut report = LawReport::new();
    report.absorb("alpha", check_natural(&m.alpha));
    report.absorb("beta", check_natural(&m.beta));
    let (a, b) = (&m.first, &m.second);
    let (c, d) = (a.domain(), a.codomain());
    for x in 0..c.num_objects() {
        let lhs = c.composite(a.right.arr(m.alpha.component(x)), a.unit.component(x));
        let rhs = c.composite(m.beta.component(b.left.obj(x)), b.unit.component(x));
        if !matches!((lhs, rhs), (Some(l), Some(r)) if c.equiv(l, r)) {
            report.push(
                "mate-unit-square",
                vec![x],
                format!("Gα.η and βF'.η' differ at {}", c.object_name(x)),
            );
        }
    }
    for y in 0..d.num_objects() {
        let lhs = d.composite(b.counit.component(y), m.alpha.component(b.right.obj(y)));
        let rhs = d.composite(a.counit.component(y), a.left.arr(m.beta.component(y)));
        if !matches!((lhs, rhs), (Some(l), Some(r)) if d.equiv(l, r)) {
            report.push(
                "mate-counit-square",
                vec![y],
                format!("ε'.αG' and ε.Fβ differ at {}", d.object_name(y)),
            );
        }
    }
    report
}

/// `β_y ∘ φ'(g) ≈ φ(g ∘ α_x)` for every class `g : F' x → y`.
pub fn check_mate_hom_square(m: &MateSetup) -> LawReport {
    let mut report = LawReport::new();
    report.absorb("alpha", check_natural(&m.alpha));
    report.absorb("beta", check_natural(&m.beta));
    let (phi, phi2) = match (
        hom_iso_of_adjunction(&m.first),
        hom_iso_of_adjunction(&m.second),
    ) {
        (Ok(p), Ok(q)) => (p, q),
        (p, q) => {
            for (name, r) in [("first", p.err()), ("second", q.err())] {
                if let Some(e) = r {
                    report.push("adjunction", vec![], format!("{name} adjunction: {e}"));
                }
            }
            return report;
        }
    };
    let (c, d) = (m.first.domain(), m.first.codomain());
    for x in 0..c.num_objects() {
        for y in 0..d.num_objects() {
            for &g in &phi2.component(x, y).left_classes {
                let lhs = phi2
                    .phi(x, y, g)
                    .and_then(|p| c.composite(m.beta.component(y), p));
                let rhs = d
                    .composite(g, m.alpha.component(x))
                    .and_then(|ga| phi.phi(x, y, ga));
                if !matches!((lhs, rhs), (Some(l), Some(r)) if c.equiv(l, r)) {
                    report.push(
                        "mate-hom-square",
                        vec![x, y, g],
                        format!(
                            "square at ({}, {}) fails on {}",
                            c.object_name(x),
                            d.object_name(y),
                            d.label(g)
                        ),
                    );
                }
            }
        }
    }
    report
}

pub fn is_adjoint_equivalence(a: &Adjunction) -> bool {
    is_natural_iso(&a.unit).is_some() && is_natural_iso(&a.counit).is_some()
}

/// `T = G F`, unit `η`, multiplication `μ_x = G(ε_{F x})`.
pub fn monad_of_adjunction(a: &Adjunction) -> Result<Monad> {
    let t = compose_functor(&a.right, &a.left)?;
    let tt = compose_functor(&t, &t)?;
    let mult = (0..a.domain().num_objects())
        .map(|x| a.right.arr(a.counit.component(a.left.obj(x))))
        .collect();
    let mult = NatTrans::new(tt, t.clone(), mult)?;
    Monad::new(t, a.unit.clone(), mult)
}
