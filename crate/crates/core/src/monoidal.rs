//! Monoidal structures with a componentwise associator, their coherence
//! diagrams, closed monoidal structures and the tensor-hom bijection.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::adjoint::{
    check_adjunction, check_hom_iso, check_mate_unit_counit, hom_iso_of_adjunction, Adjunction,
    HomIsoFamily, MateSetup,
};
use crate::category::{product_category, FinCategory};
use crate::error::{Error, Result};
use crate::limits::{find_product, find_terminal, ProductData};
use crate::report::LawReport;
use crate::transfor::{check_functor, check_natural, is_natural_iso, Cat, FinFunctor, NatTrans};

/// An isomorphism given by both directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Iso {
    pub fwd: usize,
    pub inv: usize,
}

/// Unit object, tensor bifunctor `C × C → C`, unitors and a componentwise
/// associator `(x ⊗ y) ⊗ z → x ⊗ (y ⊗ z)` stored at `(x * n + y) * n + z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalStructure {
    category: Cat,
    unit: usize,
    tensor: FinFunctor,
    lambda: Vec<Iso>,
    rho: Vec<Iso>,
    alpha: Vec<Iso>,
}

fn typed(c: &FinCategory, f: usize, a: usize, b: usize) -> bool {
    f < c.num_arrows() && c.source(f) == a && c.target(f) == b
}

impl MonoidalStructure {
    pub fn new(
        category: Cat,
        unit: usize,
        tensor: FinFunctor,
        lambda: Vec<Iso>,
        rho: Vec<Iso>,
        alpha: Vec<Iso>,
    ) -> Result<Self> {
        let c = &category;
        let n = c.num_objects();
        if unit >= n {
            return Err(Error::Structure("unit object out of range".into()));
        }
        if **tensor.source() != product_category(c, c) || **tensor.target() != **c {
            return Err(Error::Mismatch("tensor must be a functor C × C → C".into()));
        }
        if lambda.len() != n || rho.len() != n || alpha.len() != n * n * n {
            return Err(Error::Structure(
                "wrong number of structure components".into(),
            ));
        }
        let m = MonoidalStructure {
            category,
            unit,
            tensor,
            lambda,
            rho,
            alpha,
        };
        let c = &m.category;
        for x in 0..n {
            let ux = m.t(unit, x);
            let xu = m.t(x, unit);
            if !typed(c, m.lambda[x].fwd, ux, x) || !typed(c, m.lambda[x].inv, x, ux) {
                return Err(Error::Typing(format!(
                    "λ at {} is ill-typed",
                    c.object_name(x)
                )));
            }
            if !typed(c, m.rho[x].fwd, xu, x) || !typed(c, m.rho[x].inv, x, xu) {
                return Err(Error::Typing(format!(
                    "ρ at {} is ill-typed",
                    c.object_name(x)
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (l, r) = (m.t(m.t(x, y), z), m.t(x, m.t(y, z)));
                    let a = m.alpha(x, y, z);
                    if !typed(c, a.fwd, l, r) || !typed(c, a.inv, r, l) {
                        return Err(Error::Typing(format!("α at ({x}, {y}, {z}) is ill-typed")));
                    }
                }
            }
        }
        Ok(m)
    }

    /// A monoidal structure on a thin category from the object part of the
    /// tensor; every other piece is the least arrow of its hom-set.
    pub fn thin(c: &Cat, unit: usize, tensor: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = c.num_objects();
        let cc: Cat = Arc::new(product_category(c, c));
        let obj_map = (0..n * n).map(|k| tensor(k / n, k % n)).collect();
        let t = FinFunctor::from_object_map(&cc, c, obj_map)?;
        let least = |a: usize, b: usize| -> Result<Iso> {
            match (c.hom(a, b).first(), c.hom(b, a).first()) {
                (Some(&fwd), Some(&inv)) => Ok(Iso { fwd, inv }),
                _ => Err(Error::Typing(format!(
                    "{} and {} are not isomorphic",
                    c.object_name(a),
                    c.object_name(b)
                ))),
            }
        };
        let tt = |x, y| t.obj(x * n + y);
        let lambda = (0..n)
            .map(|x| least(tt(unit, x), x))
            .collect::<Result<_>>()?;
        let rho = (0..n)
            .map(|x| least(tt(x, unit), x))
            .collect::<Result<_>>()?;
        let mut alpha = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    alpha.push(least(tt(tt(x, y), z), tt(x, tt(y, z)))?);
                }
            }
        }
        MonoidalStructure::new(c.clone(), unit, t, lambda, rho, alpha)
    }

    /// A one-object category as a strict monoidal category, the tensor of
    /// arrows being their composite. A functor only when the monoid is
    /// commutative.
    pub fn strict_monoid(c: &Cat) -> Result<Self> {
        if c.num_objects() != 1 {
            return Err(Error::Precondition(
                "strict monoid structure needs one object".into(),
            ));
        }
        let m = c.num_arrows();
        let cc: Cat = Arc::new(product_category(c, c));
        let arr_map = (0..m * m).map(|k| c.c(k / m, k % m)).collect();
        let t = FinFunctor::new(cc, c.clone(), vec![0], arr_map)?;
        let id = Iso {
            fwd: c.identity(0),
            inv: c.identity(0),
        };
        MonoidalStructure::new(c.clone(), 0, t, vec![id], vec![id], vec![id])
    }

    pub fn category(&self) -> &Cat {
        &self.category
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn tensor(&self) -> &FinFunctor {
        &self.tensor
    }

    pub fn lambda(&self, x: usize) -> Iso {
        self.lambda[x]
    }

    pub fn rho(&self, x: usize) -> Iso {
        self.rho[x]
    }

    pub fn alpha(&self, x: usize, y: usize, z: usize) -> Iso {
        let n = self.category.num_objects();
        self.alpha[(x * n + y) * n + z]
    }

    /// `x ⊗ y` on objects.
    pub fn t(&self, x: usize, y: usize) -> usize {
        self.tensor.obj(x * self.category.num_objects() + y)
    }

    /// `f ⊗ g` on arrows.
    pub fn ta(&self, f: usize, g: usize) -> usize {
        self.tensor.arr(f * self.category.num_arrows() + g)
    }

    pub fn check_laws(&self) -> LawReport {
        check_monoidal(self)
    }

    /// Replaces single components. For perturbation.
    pub fn with_lambda(&self, x: usize, iso: Iso) -> Result<Self> {
        let mut lambda = self.lambda.clone();
        lambda[x] = iso;
        self.rebuilt(lambda, self.rho.clone(), self.alpha.clone())
    }

    pub fn with_rho(&self, x: usize, iso: Iso) -> Result<Self> {
        let mut rho = self.rho.clone();
        rho[x] = iso;
        self.rebuilt(self.lambda.clone(), rho, self.alpha.clone())
    }

    pub fn with_alpha(&self, x: usize, y: usize, z: usize, iso: Iso) -> Result<Self> {
        let n = self.category.num_objects();
        let mut alpha = self.alpha.clone();
        alpha[(x * n + y) * n + z] = iso;
        self.rebuilt(self.lambda.clone(), self.rho.clone(), alpha)
    }

    fn rebuilt(&self, lambda: Vec<Iso>, rho: Vec<Iso>, alpha: Vec<Iso>) -> Result<Self> {
        MonoidalStructure::new(
            self.category.clone(),
            self.unit,
            self.tensor.clone(),
            lambda,
            rho,
            alpha,
        )
    }
}

fn equal_paths(c: &FinCategory, left: &[usize], right: &[usize]) -> bool {
    matches!(
        (c.compose_path(left), c.compose_path(right)),
        (Ok(l), Ok(r)) if c.equiv(l, r)
    )
}

fn is_iso_pair(c: &FinCategory, i: Iso) -> bool {
    equal_paths(c, &[i.fwd, i.inv], &[c.identity(c.source(i.fwd))])
        && equal_paths(c, &[i.inv, i.fwd], &[c.identity(c.target(i.fwd))])
}

/// Isos, unitor naturality, both associator squares, triangle and
/// pentagon, each checked at every object tuple or arrow.
pub fn check_monoidal(m: &MonoidalStructure) -> LawReport {
    let c = m.category.as_ref();
    let (n, arrows) = (c.num_objects(), c.num_arrows());
    let mut report = LawReport::new();
    report.absorb("tensor", check_functor(&m.tensor));
    if !report.passed {
        return report;
    }
    let name = |x: usize| c.object_name(x).to_string();

    for x in 0..n {
        if !is_iso_pair(c, m.lambda[x]) {
            report.push(
                "lambda-iso",
                vec![x],
                format!("λ at {} is not invertible", name(x)),
            );
        }
        if !is_iso_pair(c, m.rho[x]) {
            report.push(
                "rho-iso",
                vec![x],
                format!("ρ at {} is not invertible", name(x)),
            );
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !is_iso_pair(c, m.alpha(x, y, z)) {
                    report.push(
                        "alpha-iso",
                        vec![x, y, z],
                        format!(
                            "α at ({}, {}, {}) is not invertible",
                            name(x),
                            name(y),
                            name(z)
                        ),
                    );
                }
            }
        }
    }

    let u = c.identity(m.unit);
    for f in 0..arrows {
        let (x, y) = (c.source(f), c.target(f));
        if !equal_paths(c, &[m.lambda[x].fwd, f], &[m.ta(u, f), m.lambda[y].fwd]) {
            report.push(
                "lambda-natural",
                vec![f],
                format!("λ square fails at {}", c.label(f)),
            );
        }
        if !equal_paths(c, &[m.rho[x].fwd, f], &[m.ta(f, u), m.rho[y].fwd]) {
            report.push(
                "rho-natural",
                vec![f],
                format!("ρ square fails at {}", c.label(f)),
            );
        }
    }

    // naturality in the left pair, the right object fixed
    for f in 0..arrows {
        for g in 0..arrows {
            for z in 0..n {
                let (x, y) = (c.source(f), c.source(g));
                let (x2, y2) = (c.target(f), c.target(g));
                let iz = c.identity(z);
                let left = [m.ta(m.ta(f, g), iz), m.alpha(x2, y2, z).fwd];
                let right = [m.alpha(x, y, z).fwd, m.ta(f, m.ta(g, iz))];
                if !equal_paths(c, &left, &right) {
                    report.push(
                        "alpha-natural-left",
                        vec![f, g, z],
                        format!(
                            "α square fails at ({}, {}, {})",
                            c.label(f),
                            c.label(g),
                            name(z)
                        ),
                    );
                }
            }
        }
    }
    // naturality in the right component, the left pair fixed
    for x in 0..n {
        for y in 0..n {
            for h in 0..arrows {
                let (z, z2) = (c.source(h), c.target(h));
                let (ix, iy) = (c.identity(x), c.identity(y));
                let ixy = c.identity(m.t(x, y));
                let left = [m.ta(ixy, h), m.alpha(x, y, z2).fwd];
                let right = [m.alpha(x, y, z).fwd, m.ta(ix, m.ta(iy, h))];
                if !equal_paths(c, &left, &right) {
                    report.push(
                        "alpha-natural-right",
                        vec![x, y, h],
                        format!(
                            "α square fails at ({}, {}, {})",
                            name(x),
                            name(y),
                            c.label(h)
                        ),
                    );
                }
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            let (ix, iy) = (c.identity(x), c.identity(y));
            let left = [m.alpha(x, m.unit, y).fwd, m.ta(ix, m.lambda[y].fwd)];
            let right = [m.ta(m.rho[x].fwd, iy)];
            if !equal_paths(c, &left, &right) {
                report.push(
                    "triangle",
                    vec![x, y],
                    format!("triangle fails at ({}, {})", name(x), name(y)),
                );
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let (ix, iw) = (c.identity(x), c.identity(w));
                    let top = [m.alpha(m.t(x, y), z, w).fwd, m.alpha(x, y, m.t(z, w)).fwd];
                    let bottom = [
                        m.ta(m.alpha(x, y, z).fwd, iw),
                        m.alpha(x, m.t(y, z), w).fwd,
                        m.ta(ix, m.alpha(y, z, w).fwd),
                    ];
                    if !equal_paths(c, &top, &bottom) {
                        report.push(
                            "pentagon",
                            vec![x, y, z, w],
                            format!(
                                "pentagon fails at ({}, {}, {}, {})",
                                name(x),
                                name(y),
                                name(z),
                                name(w)
                            ),
                        );
                    }
                }
            }
        }
    }
    report
}

/// The associator as a natural isomorphism on `C × (C × C)`, from
/// `(x ⊗ y) ⊗ z` (the left bracketing precomposed with the reassociation
/// of the product) to `x ⊗ (y ⊗ z)`. The cube category has `|C₁|³`
/// arrows, so this is meant for small fixtures.
pub fn derive_associator_naturality(m: &MonoidalStructure) -> Result<NatTrans> {
    let report = check_monoidal(m);
    if !report.passed {
        return Err(Error::Laws(report));
    }
    let c = m.category.as_ref();
    let (n, arrows) = (c.num_objects(), c.num_arrows());
    let cube: Cat = Arc::new(product_category(c, &product_category(c, c)));
    let (n2, m2) = (n * n, arrows * arrows);
    let mut l_obj = Vec::with_capacity(n * n2);
    let mut r_obj = Vec::with_capacity(n * n2);
    for k in 0..n * n2 {
        let (x, y, z) = (k / n2, (k % n2) / n, k % n);
        l_obj.push(m.t(m.t(x, y), z));
        r_obj.push(m.t(x, m.t(y, z)));
    }
    let mut l_arr = Vec::with_capacity(arrows * m2);
    let mut r_arr = Vec::with_capacity(arrows * m2);
    for k in 0..arrows * m2 {
        let (f, g, h) = (k / m2, (k % m2) / arrows, k % arrows);
        l_arr.push(m.ta(m.ta(f, g), h));
        r_arr.push(m.ta(f, m.ta(g, h)));
    }
    let left = FinFunctor::new(cube.clone(), m.category.clone(), l_obj, l_arr)?;
    let right = FinFunctor::new(cube, m.category.clone(), r_obj, r_arr)?;
    let comps = (0..n * n2)
        .map(|k| m.alpha(k / n2, (k % n2) / n, k % n).fwd)
        .collect();
    let t = NatTrans::new(left, right, comps)
        .map_err(|e| Error::Internal(format!("associator components: {e}")))?;
    if !check_natural(&t).passed || is_natural_iso(&t).is_none() {
        return Err(Error::Internal(
            "associator is not a natural isomorphism".into(),
        ));
    }
    Ok(t)
}

/// The cartesian monoidal structure from chosen binary products and a
/// terminal object as unit.
pub fn monoidal_from_products(c: &Cat) -> Result<MonoidalStructure> {
    let (n, arrows) = (c.num_objects(), c.num_arrows());
    let t = find_terminal(c)
        .ok_or_else(|| Error::StructureAbsent("terminal object for the unit".into()))?;
    let mut prods: Vec<ProductData> = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            prods.push(find_product(c, x, y).ok_or_else(|| {
                Error::StructureAbsent(format!(
                    "product of {} and {}",
                    c.object_name(x),
                    c.object_name(y)
                ))
            })?);
        }
    }
    let p = |x: usize, y: usize| &prods[x * n + y];
    let pair = |x: usize, y: usize, f: usize, g: usize| {
        p(x, y)
            .pairing(c, f, g)
            .ok_or_else(|| Error::Internal("pairing missing in a verified product".into()))
    };
    let cc: Cat = Arc::new(product_category(c, c));
    let obj_map = (0..n * n).map(|k| prods[k].object).collect();
    let arr_map = (0..arrows * arrows)
        .map(|k| {
            let (f, g) = (k / arrows, k % arrows);
            let (x, y) = (c.source(f), c.source(g));
            let (x2, y2) = (c.target(f), c.target(g));
            pair(x2, y2, c.c(f, p(x, y).proj1), c.c(g, p(x, y).proj2))
        })
        .collect::<Result<Vec<_>>>()?;
    let tensor = FinFunctor::new(cc, c.clone(), obj_map, arr_map)?;
    let one = t.object;
    let lambda = (0..n)
        .map(|x| {
            Ok(Iso {
                fwd: p(one, x).proj2,
                inv: pair(one, x, t.arrows[x], c.identity(x))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rho = (0..n)
        .map(|x| {
            Ok(Iso {
                fwd: p(x, one).proj1,
                inv: pair(x, one, c.identity(x), t.arrows[x])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut alpha = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, yz) = (prods[x * n + y].object, prods[y * n + z].object);
                let (l, r) = (p(xy, z), p(x, yz));
                // (x × y) × z → x × (y × z)
                let px = c.c(p(x, y).proj1, l.proj1);
                let py = c.c(p(x, y).proj2, l.proj1);
                let fwd = pair(x, yz, px, pair(y, z, py, l.proj2)?)?;
                // x × (y × z) → (x × y) × z
                let qy = c.c(p(y, z).proj1, r.proj2);
                let qz = c.c(p(y, z).proj2, r.proj2);
                let inv = pair(xy, z, pair(x, y, r.proj1, qy)?, qz)?;
                alpha.push(Iso { fwd, inv });
            }
        }
    }
    let m = MonoidalStructure::new(c.clone(), one, tensor, lambda, rho, alpha)?;
    let report = check_monoidal(&m);
    if !report.passed {
        return Err(Error::Internal(format!(
            "product structure fails coherence:\n{report}"
        )));
    }
    Ok(m)
}

/// A monoidal structure with an internal hom `op(C) × C → C` and, for each
/// object `x`, an adjunction `− ⊗ x ⊣ [x, −]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedMonoidalStructure {
    pub monoidal: MonoidalStructure,
    pub hom: FinFunctor,
    pub adjunctions: Vec<Adjunction>,
}

impl ClosedMonoidalStructure {
    pub fn new(
        monoidal: MonoidalStructure,
        hom: FinFunctor,
        adjunctions: Vec<Adjunction>,
    ) -> Result<Self> {
        let c = monoidal.category().clone();
        if **hom.source() != product_category(&c.op(), &c) || **hom.target() != *c {
            return Err(Error::Mismatch(
                "internal hom must be a functor op(C) × C → C".into(),
            ));
        }
        if adjunctions.len() != c.num_objects() {
            return Err(Error::Structure(
                "one adjunction per object is required".into(),
            ));
        }
        let cm = ClosedMonoidalStructure {
            monoidal,
            hom,
            adjunctions,
        };
        for (x, a) in cm.adjunctions.iter().enumerate() {
            if *a.left() != cm.tensor_with(x) || *a.right() != cm.hom_from(x) {
                return Err(Error::Mismatch(format!(
                    "adjunction at {} is not − ⊗ x ⊣ [x, −]",
                    c.object_name(x)
                )));
            }
        }
        Ok(cm)
    }

    /// Every adjunction built from least-index unit and counit components.
    pub fn with_least_components(monoidal: MonoidalStructure, hom: FinFunctor) -> Result<Self> {
        let n = monoidal.category().num_objects();
        let mut cm = ClosedMonoidalStructure {
            monoidal,
            hom,
            adjunctions: vec![],
        };
        cm.adjunctions = (0..n)
            .map(|x| Adjunction::with_least_components(cm.tensor_with(x), cm.hom_from(x)))
            .collect::<Result<_>>()?;
        ClosedMonoidalStructure::new(cm.monoidal, cm.hom, cm.adjunctions)
    }

    /// `[x, y]` on objects.
    pub fn h(&self, x: usize, y: usize) -> usize {
        self.hom.obj(x * self.monoidal.category().num_objects() + y)
    }

    /// `[f, g]` on arrows, `f` read in `op(C)`.
    pub fn ha(&self, f: usize, g: usize) -> usize {
        self.hom.arr(f * self.monoidal.category().num_arrows() + g)
    }

    /// The functor `− ⊗ x`.
    pub fn tensor_with(&self, x: usize) -> FinFunctor {
        let m = &self.monoidal;
        let c = m.category();
        let ix = c.identity(x);
        FinFunctor::new(
            c.clone(),
            c.clone(),
            (0..c.num_objects()).map(|y| m.t(y, x)).collect(),
            (0..c.num_arrows()).map(|f| m.ta(f, ix)).collect(),
        )
        .expect("a slice of a functor is a functor")
    }

    /// The functor `[x, −]`.
    pub fn hom_from(&self, x: usize) -> FinFunctor {
        let c = self.monoidal.category();
        let ix = c.identity(x);
        FinFunctor::new(
            c.clone(),
            c.clone(),
            (0..c.num_objects()).map(|y| self.h(x, y)).collect(),
            (0..c.num_arrows()).map(|f| self.ha(ix, f)).collect(),
        )
        .expect("a slice of a functor is a functor")
    }

    /// Mate data for `f : x → y`: `α_f` has components `id_z ⊗ f` and
    /// `β_f : [y, −] ⇒ [x, −]` has components `[f, z]`.
    pub fn mate_of(&self, f: usize) -> Result<MateSetup> {
        let m = &self.monoidal;
        let c = m.category();
        let (x, y) = (c.source(f), c.target(f));
        let n = c.num_objects();
        let alpha = NatTrans::new(
            self.tensor_with(x),
            self.tensor_with(y),
            (0..n).map(|z| m.ta(c.identity(z), f)).collect(),
        )?;
        let beta = NatTrans::new(
            self.hom_from(y),
            self.hom_from(x),
            (0..n).map(|z| self.ha(f, c.identity(z))).collect(),
        )?;
        MateSetup::new(
            self.adjunctions[x].clone(),
            self.adjunctions[y].clone(),
            alpha,
            beta,
        )
    }
}

/// Monoidal laws, the internal hom's functor laws, every adjunction and
/// the mate condition at every arrow.
pub fn check_closed_monoidal(cm: &ClosedMonoidalStructure) -> LawReport {
    let c = cm.monoidal.category();
    let mut report = LawReport::new();
    report.absorb("monoidal", check_monoidal(&cm.monoidal));
    report.absorb("hom", check_functor(&cm.hom));
    if !report.passed {
        return report;
    }
    for (x, a) in cm.adjunctions.iter().enumerate() {
        let mut sub = check_adjunction(a);
        for v in &mut sub.violations {
            v.indices.insert(0, x);
        }
        report.absorb(&format!("adjunction[{}]", c.object_name(x)), sub);
    }
    for f in 0..c.num_arrows() {
        match cm.mate_of(f) {
            Ok(setup) => {
                let mut sub = check_mate_unit_counit(&setup);
                for v in &mut sub.violations {
                    v.indices.insert(0, f);
                }
                report.absorb(&format!("mate[{}]", c.label(f)), sub);
            }
            Err(e) => report.push("mate", vec![f], format!("mate data at {}: {e}", c.label(f))),
        }
    }
    report
}

/// `Hom(y ⊗ x, z) ≅ Hom(y, [x, z])`, one hom-iso family per `x`, with the
/// naturality families in `y`, `z` and `x` reported separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorHomIso {
    /// Indexed by `x`; the component of family `x` at `(y, z)` is the
    /// bijection for the triple `(x, y, z)`.
    pub families: Vec<HomIsoFamily>,
    pub report: LawReport,
}

/// Builds the bijections from the adjunctions and checks all three
/// naturality families plus bijectivity at every triple. Requires every
/// adjunction to be lawful, but not the mate condition.
pub fn tensor_hom_iso(cm: &ClosedMonoidalStructure) -> Result<TensorHomIso> {
    let m = &cm.monoidal;
    let c = m.category();
    let n = c.num_objects();
    let families = cm
        .adjunctions
        .iter()
        .map(hom_iso_of_adjunction)
        .collect::<Result<Vec<_>>>()?;
    let mut report = LawReport::new();
    for (x, fam) in families.iter().enumerate() {
        for v in check_hom_iso(fam)?.violations {
            let law = match v.law.as_str() {
                "hom-iso-natural-x" => "tensor-hom-natural-y",
                "hom-iso-natural-y" => "tensor-hom-natural-z",
                _ => "tensor-hom-bijection",
            };
            let mut indices = vec![x];
            indices.extend(v.indices);
            report.push(law, indices, v.description);
        }
        for y in 0..n {
            for z in 0..n {
                let k = fam.component(y, z);
                if k.left_classes.len() != k.right_classes.len() {
                    report.push(
                        "tensor-hom-bijection",
                        vec![x, y, z],
                        format!("class counts differ at ({x}, {y}, {z})"),
                    );
                }
            }
        }
    }
    // naturality in x: φ_x(g ∘ (id_y ⊗ f)) ≈ [f, z] ∘ φ_x'(g) for f : x → x'
    for f in 0..c.num_arrows() {
        let (x, x2) = (c.source(f), c.target(f));
        for y in 0..n {
            let shift = m.ta(c.identity(y), f);
            for z in 0..n {
                for &g in &families[x2].component(y, z).left_classes {
                    let lhs = c
                        .composite(g, shift)
                        .and_then(|gs| families[x].phi(y, z, gs));
                    let rhs = families[x2]
                        .phi(y, z, g)
                        .and_then(|p| c.composite(cm.ha(f, c.identity(z)), p));
                    if !matches!((lhs, rhs), (Some(l), Some(r)) if c.equiv(l, r)) {
                        report.push(
                            "tensor-hom-natural-x",
                            vec![f, y, z, g],
                            format!(
                                "square for {} at ({}, {}) fails on {}",
                                c.label(f),
                                c.object_name(y),
                                c.object_name(z),
                                c.label(g)
                            ),
                        );
                    }
                }
            }
        }
    }
    Ok(TensorHomIso { families, report })
}

/// [`tensor_hom_iso`] for a structure that passes
/// [`check_closed_monoidal`]; then every family must pass.
pub fn derive_tensor_hom_iso(cm: &ClosedMonoidalStructure) -> Result<TensorHomIso> {
    let report = check_closed_monoidal(cm);
    if !report.passed {
        return Err(Error::Laws(report));
    }
    let iso = tensor_hom_iso(cm)?;
    if !iso.report.passed {
        return Err(Error::Internal(format!(
            "tensor-hom bijection fails on a closed structure:\n{}",
            iso.report
        )));
    }
    Ok(iso)
}

/// `chain(2)` with `min`, unit the top, and `[x, y] = y` if `x > y`, top
/// otherwise.
pub fn residuated_chain2() -> Result<ClosedMonoidalStructure> {
    let c: Cat = Arc::new(crate::fixtures::standard_category(
        &crate::fixtures::StandardKind::Chain(2),
    )?);
    let m = MonoidalStructure::thin(&c, 1, |x, y| x.min(y))?;
    let hc: Cat = Arc::new(product_category(&c.op(), &c));
    let hom_obj = (0..4)
        .map(|k| if k / 2 > k % 2 { k % 2 } else { 1 })
        .collect();
    let hom = FinFunctor::from_object_map(&hc, &c, hom_obj)?;
    ClosedMonoidalStructure::with_least_components(m, hom)
}

/// A one-object category whose monoid is commutative, as a strict closed
/// monoidal category with `[f, g] = g ∘ f`.
pub fn strict_commutative_closed(c: &Cat) -> Result<ClosedMonoidalStructure> {
    let m = MonoidalStructure::strict_monoid(c)?;
    let k = c.num_arrows();
    let arr_map = (0..k * k).map(|p| c.c(p % k, p / k)).collect();
    let hc: Cat = Arc::new(product_category(&c.op(), c));
    let hom = FinFunctor::new(hc, c.clone(), vec![0], arr_map)?;
    ClosedMonoidalStructure::with_least_components(m, hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{standard_category, StandardKind};

    fn cat(k: StandardKind) -> Cat {
        Arc::new(standard_category(&k).unwrap())
    }

    #[test]
    fn strict_z2_and_chain_min_pass() {
        let z = cat(StandardKind::z2());
        let m = MonoidalStructure::strict_monoid(&z).unwrap();
        assert!(check_monoidal(&m).passed);
        let c4 = cat(StandardKind::Chain(4));
        let m = MonoidalStructure::thin(&c4, 3, |x, y| x.min(y)).unwrap();
        assert!(check_monoidal(&m).passed);
    }

    #[test]
    fn non_commutative_monoid_is_not_strict_monoidal() {
        // {e, a, b} with xy = y for x, y ≠ e: a right-zero semigroup plus unit
        let c = cat(StandardKind::Monoid(vec![
            vec![0, 1, 2],
            vec![1, 1, 1],
            vec![2, 2, 2],
        ]));
        let m = MonoidalStructure::strict_monoid(&c).unwrap();
        assert!(check_monoidal(&m).has_law("functor-composition"));
    }

    #[test]
    fn perturbations_are_localized() {
        let z = cat(StandardKind::z2());
        let m = MonoidalStructure::strict_monoid(&z).unwrap();
        let g = z.arrow_index("g").unwrap();
        let gi = Iso { fwd: g, inv: g };
        let r = check_monoidal(&m.with_alpha(0, 0, 0, gi).unwrap());
        assert!(r
            .violations_of("pentagon")
            .any(|v| v.indices == vec![0, 0, 0, 0]));
        assert!(check_monoidal(&m.with_lambda(0, gi).unwrap()).has_law("triangle"));
        assert!(check_monoidal(&m.with_rho(0, gi).unwrap()).has_law("triangle"));
        let half = Iso {
            fwd: g,
            inv: z.identity(0),
        };
        assert!(check_monoidal(&m.with_lambda(0, half).unwrap()).has_law("lambda-iso"));
    }

    #[test]
    fn associator_naturality() {
        let z = cat(StandardKind::z2());
        let t =
            derive_associator_naturality(&MonoidalStructure::strict_monoid(&z).unwrap()).unwrap();
        assert!(t.components().iter().all(|&a| a == z.identity(0)));
        let c3 = cat(StandardKind::Chain(3));
        let m = MonoidalStructure::thin(&c3, 2, |x, y| x.min(y)).unwrap();
        let t = derive_associator_naturality(&m).unwrap();
        assert!(t.components().iter().all(|&a| c3.is_identity(a)));
    }

    #[test]
    fn products_give_the_min_structure() {
        let c4 = cat(StandardKind::Chain(4));
        let p = monoidal_from_products(&c4).unwrap();
        let direct = MonoidalStructure::thin(&c4, 3, |x, y| x.min(y)).unwrap();
        assert_eq!(p.unit(), 3);
        assert_eq!(p.tensor(), direct.tensor());
        for x in 0..4 {
            assert!(c4.equiv(p.lambda(x).fwd, direct.lambda(x).fwd));
        }
        let one = cat(StandardKind::One);
        assert!(check_monoidal(&monoidal_from_products(&one).unwrap()).passed);
        let pp = cat(StandardKind::ParallelPair);
        assert!(matches!(
            monoidal_from_products(&pp),
            Err(Error::StructureAbsent(_))
        ));
    }

    #[test]
    fn residuated_chain_is_closed() {
        let cm = residuated_chain2().unwrap();
        assert!(check_closed_monoidal(&cm).passed);
        let iso = derive_tensor_hom_iso(&cm).unwrap();
        for fam in &iso.families {
            for k in &fam.components {
                assert_eq!(k.left_classes.len(), k.right_classes.len());
            }
        }
    }

    #[test]
    fn cyclic_group_is_closed() {
        // [f, g] = f⁻¹ g would break the mate condition here, unlike in z2
        let c3 = cat(StandardKind::cyclic(3));
        assert!(check_closed_monoidal(&strict_commutative_closed(&c3).unwrap()).passed);
    }

    #[test]
    fn broken_mate_breaks_only_x_naturality() {
        let z = cat(StandardKind::z2());
        let cm = strict_commutative_closed(&z).unwrap();
        assert!(check_closed_monoidal(&cm).passed);
        // [f, g] = g forgets the contravariant slot
        let k = z.num_arrows();
        let hom = FinFunctor::new(
            cm.hom.source().clone(),
            z.clone(),
            vec![0],
            (0..k * k).map(|p| p % k).collect(),
        )
        .unwrap();
        let bad = ClosedMonoidalStructure::with_least_components(cm.monoidal.clone(), hom).unwrap();
        let r = check_closed_monoidal(&bad);
        assert!(r.has_law("mate-unit-square") && !r.has_law("zig") && !r.has_law("zag"));
        let iso = tensor_hom_iso(&bad).unwrap();
        assert!(iso.report.has_law("tensor-hom-natural-x"));
        assert!(iso
            .report
            .violations
            .iter()
            .all(|v| v.law == "tensor-hom-natural-x"));
    }

    #[test]
    fn broken_counit_is_reported_at_its_object() {
        let z = cat(StandardKind::z2());
        let cm = strict_commutative_closed(&z).unwrap();
        let g = z.arrow_index("g").unwrap();
        let mut adjs = cm.adjunctions.clone();
        adjs[0] = adjs[0]
            .with_components(vec![z.identity(0)], vec![g])
            .unwrap();
        let bad = ClosedMonoidalStructure::new(cm.monoidal.clone(), cm.hom.clone(), adjs).unwrap();
        let r = check_closed_monoidal(&bad);
        assert!(r
            .violations
            .iter()
            .any(|v| v.law.starts_with("adjunction[*]") && v.indices[0] == 0));
    }
}
