//! Functors, natural transformations and monads between finite categories.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{Arrow, FinCategory};
use crate::error::{Error, Result};
use crate::report::LawReport;

pub type Cat = Arc<FinCategory>;

/// Default cap on enumeration search spaces.
pub const DEFAULT_SEARCH_CAP: u128 = 1_000_000;

pub(crate) fn same_category(a: &Cat, b: &Cat) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    source: Cat,
    target: Cat,
    obj_map: Vec<usize>,
    arr_map: Vec<usize>,
}

impl FinFunctor {
    pub fn new(source: Cat, target: Cat, obj_map: Vec<usize>, arr_map: Vec<usize>) -> Result<Self> {
        if obj_map.len() != source.num_objects() || arr_map.len() != source.num_arrows() {
            return Err(Error::Structure(format!(
                "functor maps have {}/{} entries for {}/{} objects/arrows",
                obj_map.len(),
                arr_map.len(),
                source.num_objects(),
                source.num_arrows()
            )));
        }
        if obj_map.iter().any(|&y| y >= target.num_objects())
            || arr_map.iter().any(|&g| g >= target.num_arrows())
        {
            return Err(Error::Structure("functor image out of range".into()));
        }
        Ok(FinFunctor {
            source,
            target,
            obj_map,
            arr_map,
        })
    }

    pub fn identity(c: &Cat) -> Self {
        FinFunctor {
            source: c.clone(),
            target: c.clone(),
            obj_map: (0..c.num_objects()).collect(),
            arr_map: (0..c.num_arrows()).collect(),
        }
    }

    /// Sends every object to `x` and every arrow to `id_x`.
    pub fn constant(source: &Cat, target: &Cat, x: usize) -> Result<Self> {
        if x >= target.num_objects() {
            return Err(Error::Structure(format!("object {x} out of range")));
        }
        Self::new(
            source.clone(),
            target.clone(),
            vec![x; source.num_objects()],
            vec![target.identity(x); source.num_arrows()],
        )
    }

    /// Extends an object map by sending each arrow to the least arrow of the
    /// required hom-set. Exact for thin targets; errors if a hom-set is empty.
    pub fn from_object_map(source: &Cat, target: &Cat, obj_map: Vec<usize>) -> Result<Self> {
        if obj_map.len() != source.num_objects()
            || obj_map.iter().any(|&y| y >= target.num_objects())
        {
            return Err(Error::Structure(
                "object map does not fit the categories".into(),
            ));
        }
        let arr_map = source
            .arrows()
            .iter()
            .map(|a| {
                let (x, y) = (obj_map[a.source], obj_map[a.target]);
                target.hom(x, y).first().copied().ok_or_else(|| {
                    Error::Typing(format!(
                        "no arrow {} -> {} to receive {}",
                        target.object_name(x),
                        target.object_name(y),
                        a.label
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source.clone(), target.clone(), obj_map, arr_map)
    }

    pub fn source(&self) -> &Cat {
        &self.source
    }

    pub fn target(&self) -> &Cat {
        &self.target
    }

    pub fn obj(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    pub fn arr(&self, f: usize) -> usize {
        self.arr_map[f]
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }

    pub fn arr_map(&self) -> &[usize] {
        &self.arr_map
    }

    /// `self ∘ f`: apply `f` first.
    pub fn after(&self, f: &FinFunctor) -> Result<FinFunctor> {
        compose_functor(self, f)
    }

    pub fn op(&self) -> FinFunctor {
        op_functor(self)
    }

    pub fn check_laws(&self) -> LawReport {
        check_functor(self)
    }

    /// Same maps, different display of endpoints: `f ≈ g` componentwise.
    pub fn equiv(&self, other: &FinFunctor) -> bool {
        self.obj_map == other.obj_map
            && self
                .arr_map
                .iter()
                .zip(&other.arr_map)
                .all(|(&a, &b)| self.target.equiv(a, b))
    }
}

pub fn id_functor(c: &Cat) -> FinFunctor {
    FinFunctor::identity(c)
}

/// `g ∘ f`.
pub fn compose_functor(g: &FinFunctor, f: &FinFunctor) -> Result<FinFunctor> {
    if !same_category(&f.target, &g.source) {
        return Err(Error::Mismatch(
            "middle categories of the composite differ".into(),
        ));
    }
    Ok(FinFunctor {
        source: f.source.clone(),
        target: g.target.clone(),
        obj_map: f.obj_map.iter().map(|&x| g.obj_map[x]).collect(),
        arr_map: f.arr_map.iter().map(|&a| g.arr_map[a]).collect(),
    })
}

/// The same maps between the opposite categories.
pub fn op_functor(f: &FinFunctor) -> FinFunctor {
    FinFunctor {
        source: Arc::new(f.source.op()),
        target: Arc::new(f.target.op()),
        obj_map: f.obj_map.clone(),
        arr_map: f.arr_map.clone(),
    }
}

pub fn check_functor(func: &FinFunctor) -> LawReport {
    let (c, d) = (&*func.source, &*func.target);
    let mut report = LawReport::new();
    let typed = |f: usize| {
        let g = func.arr_map[f];
        d.source(g) == func.obj_map[c.source(f)] && d.target(g) == func.obj_map[c.target(f)]
    };
    for f in 0..c.num_arrows() {
        if !typed(f) {
            report.push(
                "functor-typing",
                vec![f],
                format!("image of {} has the wrong endpoints", c.label(f)),
            );
        }
    }
    for x in 0..c.num_objects() {
        let i = c.identity(x);
        if typed(i) && !d.equiv(func.arr_map[i], d.identity(func.obj_map[x])) {
            report.push(
                "functor-identity",
                vec![x],
                format!(
                    "identity of {} is not sent to an identity",
                    c.object_name(x)
                ),
            );
        }
    }
    for f in 0..c.num_arrows() {
        for g in 0..c.num_arrows() {
            if c.target(f) != c.source(g) || !typed(f) || !typed(g) {
                continue;
            }
            let Some(gf) = c.composite(g, f) else {
                continue;
            };
            if !typed(gf) {
                continue;
            }
            match d.composite(func.arr_map[g], func.arr_map[f]) {
                Some(img) if d.equiv(img, func.arr_map[gf]) => {}
                _ => report.push(
                    "functor-composition",
                    vec![g, f],
                    format!(
                        "F({}.{}) is not ≈ F({}).F({})",
                        c.label(g),
                        c.label(f),
                        c.label(g),
                        c.label(f)
                    ),
                ),
            }
        }
    }
    for f in 0..c.num_arrows() {
        let r = c.eq_class(f);
        if r != f && typed(f) && typed(r) && !d.equiv(func.arr_map[f], func.arr_map[r]) {
            report.push(
                "functor-resp-equiv",
                vec![f, r],
                format!("{} ≈ {} but their images differ", c.label(f), c.label(r)),
            );
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    source: FinFunctor,
    target: FinFunctor,
    components: Vec<usize>,
}

impl NatTrans {
    /// Components must be typed `F x → G x`; naturality is left to
    /// [`check_natural`].
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<usize>) -> Result<Self> {
        if !same_category(&source.source, &target.source)
            || !same_category(&source.target, &target.target)
        {
            return Err(Error::Mismatch(
                "natural transformation between functors with different endpoints".into(),
            ));
        }
        let d = &source.target;
        if components.len() != source.source.num_objects() {
            return Err(Error::Structure(format!(
                "{} components for {} objects",
                components.len(),
                source.source.num_objects()
            )));
        }
        for (x, &a) in components.iter().enumerate() {
            if a >= d.num_arrows() {
                return Err(Error::Structure(format!("component {a} is not an arrow")));
            }
            if d.source(a) != source.obj(x) || d.target(a) != target.obj(x) {
                return Err(Error::Typing(format!(
                    "component at {} is {} : {} -> {}, expected {} -> {}",
                    source.source.object_name(x),
                    d.label(a),
                    d.object_name(d.source(a)),
                    d.object_name(d.target(a)),
                    d.object_name(source.obj(x)),
                    d.object_name(target.obj(x))
                )));
            }
        }
        Ok(NatTrans {
            source,
            target,
            components,
        })
    }

    pub fn identity(f: &FinFunctor) -> Self {
        let components = f.obj_map.iter().map(|&y| f.target.identity(y)).collect();
        NatTrans {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn check_laws(&self) -> LawReport {
        check_natural(self)
    }

    /// Componentwise `≈`.
    pub fn equiv(&self, other: &NatTrans) -> bool {
        let d = &self.source.target;
        self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(&a, &b)| d.equiv(a, b))
    }

    /// `H t`: components `H(t_x)`.
    pub fn whisker_left(h: &FinFunctor, t: &NatTrans) -> Result<NatTrans> {
        let hf = compose_functor(h, &t.source)?;
        let hg = compose_functor(h, &t.target)?;
        let comps = t.components.iter().map(|&a| h.arr(a)).collect();
        NatTrans::new(hf, hg, comps)
    }

    /// `s F`: components `s_{F x}`.
    pub fn whisker_right(s: &NatTrans, f: &FinFunctor) -> Result<NatTrans> {
        let hf = compose_functor(&s.source, f)?;
        let kf = compose_functor(&s.target, f)?;
        let comps = f.obj_map.iter().map(|&y| s.components[y]).collect();
        NatTrans::new(hf, kf, comps)
    }
}

pub fn check_natural(t: &NatTrans) -> LawReport {
    let (f, g) = (&t.source, &t.target);
    let (c, d) = (&*f.source, &*f.target);
    let mut report = LawReport::new();
    for a in 0..c.num_arrows() {
        let (x, y) = (c.source(a), c.target(a));
        let lhs = d.composite(g.arr(a), t.components[x]);
        let rhs = d.composite(t.components[y], f.arr(a));
        let ok = matches!((lhs, rhs), (Some(l), Some(r)) if d.equiv(l, r));
        if !ok {
            report.push(
                "naturality",
                vec![a],
                format!(
                    "square at {} : {} -> {} does not commute",
                    c.label(a),
                    c.object_name(x),
                    c.object_name(y)
                ),
            );
        }
    }
    report
}

/// `s ∘ t` for `t : F ⇒ G`, `s : G ⇒ H`.
pub fn vcomp(s: &NatTrans, t: &NatTrans) -> Result<NatTrans> {
    if t.target != s.source {
        return Err(Error::Mismatch(
            "vertical composite of non-adjacent transformations".into(),
        ));
    }
    let d = &t.source.target;
    let comps = s
        .components
        .iter()
        .zip(&t.components)
        .map(|(&a, &b)| d.compose(a, b))
        .collect::<Result<Vec<_>>>()?;
    NatTrans::new(t.source.clone(), s.target.clone(), comps)
}

/// Horizontal composite of `s : H ⇒ K` (on `D → E`) after `t : F ⇒ G`
/// (on `C → D`); the component at `x` is `K(t_x) ∘ s_{F x}`.
pub fn hcomp(s: &NatTrans, t: &NatTrans) -> Result<NatTrans> {
    let hf = compose_functor(&s.source, &t.source)?;
    let kg = compose_functor(&s.target, &t.target)?;
    let e = &s.source.target;
    let comps = (0..t.components.len())
        .map(|x| e.compose(s.target.arr(t.components[x]), s.components[t.source.obj(x)]))
        .collect::<Result<Vec<_>>>()?;
    NatTrans::new(hf, kg, comps)
}

/// The two-sided inverse of `t` up to `≈`, if every component has one.
/// Components are the least arrows that work.
pub fn is_natural_iso(t: &NatTrans) -> Option<NatTrans> {
    let d = &t.source.target;
    let comps = (0..t.components.len())
        .map(|x| {
            let a = t.components[x];
            let (fx, gx) = (d.source(a), d.target(a));
            d.hom(gx, fx).iter().copied().find(|&b| {
                matches!(d.composite(b, a), Some(ba) if d.equiv(ba, d.identity(fx)))
                    && matches!(d.composite(a, b), Some(ab) if d.equiv(ab, d.identity(gx)))
            })
        })
        .collect::<Option<Vec<_>>>()?;
    NatTrans::new(t.target.clone(), t.source.clone(), comps).ok()
}

fn cap_check(candidates: u128, cap: u128) -> Result<()> {
    if candidates > cap {
        Err(Error::TooLarge { candidates, cap })
    } else {
        Ok(())
    }
}

fn object_maps(nj: usize, nc: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if nj == 0 {
        1
    } else {
        nc.checked_pow(nj as u32).unwrap_or(usize::MAX)
    };
    let total = if nc == 0 && nj > 0 { 0 } else { total };
    (0..total).map(move |mut k| {
        let mut v = vec![0; nj];
        for slot in v.iter_mut().rev() {
            *slot = k % nc;
            k /= nc;
        }
        v
    })
}

/// Number of functor candidates (object maps plus arrow assignments) a
/// brute-force search over `J → C` would visit.
pub fn functor_search_space(j: &FinCategory, c: &FinCategory) -> u128 {
    let (nj, nc) = (j.num_objects() as u32, c.num_objects() as u128);
    let obj_maps = nc.checked_pow(nj).unwrap_or(u128::MAX);
    if obj_maps > u64::MAX as u128 {
        return u128::MAX;
    }
    let mut total = obj_maps;
    for om in object_maps(j.num_objects(), c.num_objects()) {
        let mut prod: u128 = 1;
        for a in j.arrows() {
            prod = prod.saturating_mul(c.hom(om[a.source], om[a.target]).len() as u128);
        }
        total = total.saturating_add(prod);
        if total == u128::MAX {
            break;
        }
    }
    total
}

/// All law-abiding functors `J → C`, lexicographic in `(obj_map, arr_map)`.
pub fn enumerate_functors(j: &Cat, c: &Cat, cap: u128) -> Result<Vec<FinFunctor>> {
    let nj = j.num_objects() as u32;
    let obj_maps = (c.num_objects() as u128)
        .checked_pow(nj)
        .unwrap_or(u128::MAX);
    cap_check(obj_maps, cap)?;
    cap_check(functor_search_space(j, c), cap)?;

    let m = j.num_arrows();
    let mut out = Vec::new();
    for om in object_maps(j.num_objects(), c.num_objects()) {
        let choices: Vec<&[usize]> = j
            .arrows()
            .iter()
            .map(|a| c.hom(om[a.source], om[a.target]))
            .collect();
        if choices.iter().any(|ch| ch.is_empty()) {
            continue;
        }
        let mut am = vec![0usize; m];
        extend_functor(j, c, &om, &choices, 0, &mut am, &mut out);
    }
    Ok(out)
}

fn extend_functor(
    j: &Cat,
    c: &Cat,
    om: &[usize],
    choices: &[&[usize]],
    k: usize,
    am: &mut Vec<usize>,
    out: &mut Vec<FinFunctor>,
) {
    if k == am.len() {
        let f = FinFunctor {
            source: j.clone(),
            target: c.clone(),
            obj_map: om.to_vec(),
            arr_map: am.clone(),
        };
        debug_assert!(check_functor(&f).passed);
        out.push(f);
        return;
    }
    for &g in choices[k] {
        am[k] = g;
        if functor_prefix_ok(j, c, om, am, k) {
            extend_functor(j, c, om, choices, k + 1, am, out);
        }
    }
}

/// Checks every law instance whose arrows all have index `≤ k` and that
/// involves `k`.
fn functor_prefix_ok(
    j: &FinCategory,
    c: &FinCategory,
    om: &[usize],
    am: &[usize],
    k: usize,
) -> bool {
    if j.is_identity(k) && !c.equiv(am[k], c.identity(om[j.source(k)])) {
        return false;
    }
    let r = j.eq_class(k);
    if r < k && !c.equiv(am[k], am[r]) {
        return false;
    }
    for g in 0..=k {
        for f in 0..=k {
            if g != k && f != k {
                continue;
            }
            if j.target(f) != j.source(g) {
                continue;
            }
            let Some(gf) = j.composite(g, f) else {
                continue;
            };
            if gf > k {
                continue;
            }
            match c.composite(am[g], am[f]) {
                Some(img) if c.equiv(img, am[gf]) => {}
                _ => return false,
            }
        }
    }
    // composites landing on k from earlier arrows
    for g in 0..k {
        for f in 0..k {
            if j.target(f) == j.source(g) && j.composite(g, f) == Some(k) {
                match c.composite(am[g], am[f]) {
                    Some(img) if c.equiv(img, am[k]) => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// All natural transformations `F ⇒ G`, lexicographic in the components.
pub fn enumerate_nat_trans(f: &FinFunctor, g: &FinFunctor, cap: u128) -> Result<Vec<NatTrans>> {
    if !same_category(&f.source, &g.source) || !same_category(&f.target, &g.target) {
        return Err(Error::Mismatch("functors with different endpoints".into()));
    }
    let (c, d) = (&*f.source, &*f.target);
    let choices: Vec<&[usize]> = (0..c.num_objects())
        .map(|x| d.hom(f.obj(x), g.obj(x)))
        .collect();
    let space = choices
        .iter()
        .fold(1u128, |acc, ch| acc.saturating_mul(ch.len() as u128));
    cap_check(space, cap)?;
    let mut out = Vec::new();
    let mut comps = vec![0; c.num_objects()];
    extend_nat(f, g, &choices, 0, &mut comps, &mut out);
    Ok(out)
}

fn extend_nat(
    f: &FinFunctor,
    g: &FinFunctor,
    choices: &[&[usize]],
    x: usize,
    comps: &mut Vec<usize>,
    out: &mut Vec<NatTrans>,
) {
    if x == comps.len() {
        out.push(NatTrans {
            source: f.clone(),
            target: g.clone(),
            components: comps.clone(),
        });
        return;
    }
    let (c, d) = (&*f.source, &*f.target);
    for &a in choices[x] {
        comps[x] = a;
        let ok = c.arrows().iter().enumerate().all(|(h, ar)| {
            let (s, t) = (ar.source, ar.target);
            if s.max(t) != x {
                return true;
            }
            let lhs = d.composite(g.arr(h), comps[s]);
            let rhs = d.composite(comps[t], f.arr(h));
            matches!((lhs, rhs), (Some(l), Some(r)) if d.equiv(l, r))
        });
        if ok {
            extend_nat(f, g, choices, x + 1, comps, out);
        }
    }
}

/// A functor category together with the functors and transformations its
/// objects and arrows stand for.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub category: FinCategory,
    pub functors: Vec<FinFunctor>,
    pub transformations: Vec<NatTrans>,
}

/// `[J, C]`: objects are the functors `J → C`, arrows the natural
/// transformations, `≈` is componentwise and composition is vertical.
pub fn functor_category(j: &Cat, c: &Cat, cap: u128) -> Result<FunctorCategory> {
    let functors = enumerate_functors(j, c, cap)?;
    let mut nat_space: u128 = 0;
    for f in &functors {
        for g in &functors {
            let prod = (0..j.num_objects()).fold(1u128, |acc, x| {
                acc.saturating_mul(c.hom(f.obj(x), g.obj(x)).len() as u128)
            });
            nat_space = nat_space.saturating_add(prod);
        }
    }
    cap_check(nat_space, cap)?;

    let mut arrows = Vec::new();
    let mut transformations = Vec::new();
    let mut ends = Vec::new();
    for (s, f) in functors.iter().enumerate() {
        for (t, g) in functors.iter().enumerate() {
            for nt in enumerate_nat_trans(f, g, cap)? {
                let label = if s == t && nt == NatTrans::identity(f) {
                    format!("id_F{s}")
                } else {
                    format!("n{}", arrows.len())
                };
                arrows.push(Arrow::new(s, t, label));
                ends.push((s, t));
                transformations.push(nt);
            }
        }
    }
    let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for (i, nt) in transformations.iter().enumerate() {
        index.insert((ends[i].0, ends[i].1, nt.components.clone()), i);
    }
    let eq = (0..transformations.len())
        .map(|i| {
            (0..=i)
                .find(|&k| ends[k] == ends[i] && transformations[k].equiv(&transformations[i]))
                .unwrap_or(i)
        })
        .collect();
    let identities = functors
        .iter()
        .enumerate()
        .map(|(s, f)| index[&(s, s, NatTrans::identity(f).components)])
        .collect();
    let names = (0..functors.len()).map(|s| format!("F{s}")).collect();
    let category = FinCategory::from_fn(names, arrows, eq, identities, |p, q| {
        let v = vcomp(&transformations[p], &transformations[q]).ok()?;
        index.get(&(ends[q].0, ends[p].1, v.components)).copied()
    })?;
    Ok(FunctorCategory {
        category,
        functors,
        transformations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monad {
    functor: FinFunctor,
    unit: NatTrans,
    mult: NatTrans,
}

impl Monad {
    pub fn new(functor: FinFunctor, unit: NatTrans, mult: NatTrans) -> Result<Self> {
        let c = functor.source.clone();
        if !same_category(&c, &functor.target) {
            return Err(Error::Typing("monad functor is not an endofunctor".into()));
        }
        if unit.source != FinFunctor::identity(&c) || unit.target != functor {
            return Err(Error::Typing(
                "unit must go from the identity functor to T".into(),
            ));
        }
        let tt = compose_functor(&functor, &functor)?;
        if mult.source != tt || mult.target != functor {
            return Err(Error::Typing("multiplication must go from T.T to T".into()));
        }
        Ok(Monad {
            functor,
            unit,
            mult,
        })
    }

    pub fn identity(c: &Cat) -> Self {
        let id = FinFunctor::identity(c);
        let unit = NatTrans::identity(&id);
        Monad {
            functor: id,
            mult: unit.clone(),
            unit,
        }
    }

    pub fn category(&self) -> &Cat {
        &self.functor.source
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.functor
    }

    pub fn unit(&self) -> &NatTrans {
        &self.unit
    }

    pub fn mult(&self) -> &NatTrans {
        &self.mult
    }

    pub fn check_laws(&self) -> LawReport {
        check_monad(self)
    }
}

pub fn check_monad(m: &Monad) -> LawReport {
    let c = &*m.functor.source;
    let t = &m.functor;
    let mut report = LawReport::new();
    report.absorb("T", check_functor(t));
    report.absorb("unit", check_natural(&m.unit));
    report.absorb("mult", check_natural(&m.mult));
    for x in 0..c.num_objects() {
        let tx = t.obj(x);
        let mu = m.mult.component(x);
        let assoc = (
            c.composite(mu, t.arr(mu)),
            c.composite(mu, m.mult.component(tx)),
        );
        if !matches!(assoc, (Some(a), Some(b)) if c.equiv(a, b)) {
            report.push(
                "monad-assoc",
                vec![x],
                format!("μ.Tμ and μ.μT differ at {}", c.object_name(x)),
            );
        }
        let id = c.identity(tx);
        if !matches!(c.composite(mu, t.arr(m.unit.component(x))), Some(a) if c.equiv(a, id)) {
            report.push(
                "monad-unit-right",
                vec![x],
                format!("μ.Tη is not the identity at {}", c.object_name(x)),
            );
        }
        if !matches!(c.composite(mu, m.unit.component(tx)), Some(a) if c.equiv(a, id)) {
            report.push(
                "monad-unit-left",
                vec![x],
                format!("μ.ηT is not the identity at {}", c.object_name(x)),
            );
        }
    }
    report
}

/// The Kleisli category, with the base arrow behind each Kleisli arrow.
#[derive(Clone, Debug)]
pub struct Kleisli {
    pub category: FinCategory,
    /// Kleisli arrow `a ⇝ b` is the base arrow `underlying[i] : a → T b`.
    pub underlying: Vec<usize>,
}

/// Objects of `C`; arrows `a ⇝ b` are arrows `a → T b` of `C`; the composite
/// `g ∘ f` is `μ ∘ T g ∘ f` and identities are the unit components.
pub fn kleisli_category(m: &Monad) -> Result<Kleisli> {
    let report = check_monad(m);
    if !report.passed {
        return Err(Error::Laws(report));
    }
    let c = &*m.functor.source;
    let t = &m.functor;
    let mut arrows = Vec::new();
    let mut underlying = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for f in 0..c.num_arrows() {
        let targets: Vec<usize> = (0..c.num_objects())
            .filter(|&b| t.obj(b) == c.target(f))
            .collect();
        for &b in &targets {
            let label = if targets.len() == 1 {
                c.label(f).to_string()
            } else {
                format!("{}@{}", c.label(f), c.object_name(b))
            };
            index.insert((f, b), arrows.len());
            arrows.push(Arrow::new(c.source(f), b, label));
            underlying.push(f);
        }
    }
    let eq = (0..arrows.len())
        .map(|i| {
            (0..=i)
                .find(|&k| {
                    arrows[k].source == arrows[i].source
                        && arrows[k].target == arrows[i].target
                        && c.equiv(underlying[k], underlying[i])
                })
                .unwrap_or(i)
        })
        .collect();
    let identities = (0..c.num_objects())
        .map(|a| index[&(m.unit.component(a), a)])
        .collect();
    let ends: Vec<usize> = arrows.iter().map(|a| a.target).collect();
    let category = FinCategory::from_fn(c.objects().to_vec(), arrows, eq, identities, |g, f| {
        let tg_f = c.composite(t.arr(underlying[g]), underlying[f])?;
        let h = c.composite(m.mult.component(ends[g]), tg_f)?;
        index.get(&(h, ends[g])).copied()
    })?;
    Ok(Kleisli {
        category,
        underlying,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{standard_category, StandardKind};

    fn cat(k: StandardKind) -> Cat {
        Arc::new(standard_category(&k).unwrap())
    }

    #[test]
    fn identity_and_constant_functors_pass() {
        let c = cat(StandardKind::Divisors(12));
        assert!(check_functor(&FinFunctor::identity(&c)).passed);
        let k = FinFunctor::constant(&c, &c, 3).unwrap();
        assert!(check_functor(&k).passed);
    }

    #[test]
    fn doubling_is_a_functor() {
        let (c2, c4) = (cat(StandardKind::Chain(2)), cat(StandardKind::Chain(4)));
        let f = FinFunctor::from_object_map(&c2, &c4, vec![0, 2]).unwrap();
        assert!(check_functor(&f).passed);
    }

    #[test]
    fn out_of_range_maps_are_structural() {
        let c = cat(StandardKind::One);
        assert!(matches!(
            FinFunctor::new(c.clone(), c.clone(), vec![4], vec![0]),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn functor_laws_catch_a_bad_arrow_image() {
        let z = cat(StandardKind::z2());
        // identity sent to g
        let f = FinFunctor::new(z.clone(), z.clone(), vec![0], vec![1, 1]).unwrap();
        let r = check_functor(&f);
        assert!(r.has_law("functor-identity"));
    }

    #[test]
    fn op_functor_is_an_involution() {
        let (c2, c4) = (cat(StandardKind::Chain(2)), cat(StandardKind::Chain(4)));
        let f = FinFunctor::from_object_map(&c2, &c4, vec![0, 2]).unwrap();
        assert_eq!(op_functor(&op_functor(&f)), f);
        let k = FinFunctor::constant(&c2, &c4, 1).unwrap();
        let kop = FinFunctor::constant(&Arc::new(c2.op()), &Arc::new(c4.op()), 1).unwrap();
        assert_eq!(op_functor(&k), kop);
    }

    #[test]
    fn compose_with_identity() {
        let (c2, c4) = (cat(StandardKind::Chain(2)), cat(StandardKind::Chain(4)));
        let f = FinFunctor::from_object_map(&c2, &c4, vec![1, 3]).unwrap();
        assert_eq!(compose_functor(&FinFunctor::identity(&c4), &f).unwrap(), f);
        assert!(matches!(compose_functor(&f, &f), Err(Error::Mismatch(_))));
    }

    #[test]
    fn naturality_counterexample_in_parallel_pair() {
        let pp = cat(StandardKind::ParallelPair);
        let id = FinFunctor::identity(&pp);
        // swap functor: s <-> t
        let (s, t) = (pp.arrow_index("s").unwrap(), pp.arrow_index("t").unwrap());
        let mut am: Vec<usize> = (0..pp.num_arrows()).collect();
        am.swap(s, t);
        let sw = FinFunctor::new(pp.clone(), pp.clone(), vec![0, 1], am).unwrap();
        assert!(check_functor(&sw).passed);
        // identity components id => sw: square at s reads sw(s).id = t vs id.s = s
        let comps = vec![pp.identity(0), pp.identity(1)];
        let nt = NatTrans::new(id, sw, comps).unwrap();
        let r = check_natural(&nt);
        let bad: Vec<_> = r
            .violations_of("naturality")
            .map(|v| v.indices[0])
            .collect();
        assert_eq!(bad.len(), 2);
        assert!(bad.contains(&s) && bad.contains(&t));
    }

    #[test]
    fn component_typing_is_structural() {
        let wa = cat(StandardKind::WalkingArrow);
        let id = FinFunctor::identity(&wa);
        let u = wa.arrow_index("u").unwrap();
        assert!(matches!(
            NatTrans::new(id.clone(), id, vec![u, u]),
            Err(Error::Typing(_))
        ));
    }

    #[test]
    fn natural_isos() {
        let wa = cat(StandardKind::WalkingArrow);
        let id = FinFunctor::identity(&wa);
        let nt = NatTrans::identity(&id);
        assert_eq!(is_natural_iso(&nt).unwrap(), nt);

        // constant at a => constant at b, component u: not invertible
        let ka = FinFunctor::constant(&wa, &wa, 0).unwrap();
        let kb = FinFunctor::constant(&wa, &wa, 1).unwrap();
        let u = wa.arrow_index("u").unwrap();
        let t = NatTrans::new(ka, kb, vec![u, u]).unwrap();
        assert!(check_natural(&t).passed);
        assert!(is_natural_iso(&t).is_none());

        let ip = cat(StandardKind::IsoPair);
        let ka = FinFunctor::constant(&ip, &ip, 0).unwrap();
        let kb = FinFunctor::constant(&ip, &ip, 1).unwrap();
        let (i, j) = (ip.arrow_index("i").unwrap(), ip.arrow_index("j").unwrap());
        let t = NatTrans::new(ka, kb, vec![i, i]).unwrap();
        let inv = is_natural_iso(&t).unwrap();
        assert_eq!(inv.components(), &[j, j]);
    }

    #[test]
    fn vertical_and_horizontal_identities() {
        let c = cat(StandardKind::Divisors(12));
        let f = FinFunctor::constant(&c, &c, 5).unwrap();
        let idf = NatTrans::identity(&f);
        assert!(vcomp(&idf, &idf).unwrap().equiv(&idf));
        let id = FinFunctor::identity(&c);
        let h = hcomp(&NatTrans::identity(&id), &NatTrans::identity(&id)).unwrap();
        assert!(h.equiv(&NatTrans::identity(&id)));
    }

    #[test]
    fn functor_category_sizes() {
        let one = cat(StandardKind::One);
        let d12 = cat(StandardKind::Divisors(12));
        let fc = functor_category(&one, &d12, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(fc.category.num_objects(), 6);
        assert!(fc.category.check_laws().passed);

        let d2 = cat(StandardKind::Discrete(2));
        let wa = cat(StandardKind::WalkingArrow);
        let fc = functor_category(&d2, &wa, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(fc.category.num_objects(), 4);
        assert!(fc.category.check_laws().passed);
    }

    #[test]
    fn functor_category_walking_arrow_into_z2() {
        // Brute force: every pair (image of id_a, image of id_b, image of u)
        // in z2^3, kept when identities go to e; naturality of every
        // component pair checked by hand multiplication.
        let z: [[usize; 2]; 2] = [[0, 1], [1, 0]];
        let mut functors = Vec::new();
        for ia in 0..2 {
            for ib in 0..2 {
                for u in 0..2 {
                    if ia == 0 && ib == 0 {
                        functors.push(u);
                    }
                }
            }
        }
        let mut nats = 0;
        for &fu in &functors {
            for &gu in &functors {
                for ea in 0..2 {
                    for eb in 0..2 {
                        if z[gu][ea] == z[eb][fu] {
                            nats += 1;
                        }
                    }
                }
            }
        }
        assert_eq!((functors.len(), nats), (2, 8));

        let wa = cat(StandardKind::WalkingArrow);
        let z2 = cat(StandardKind::z2());
        let fc = functor_category(&wa, &z2, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(fc.category.num_objects(), functors.len());
        assert_eq!(fc.category.num_arrows(), nats);
        assert!(fc.category.check_laws().passed);
    }

    #[test]
    fn functor_category_cap() {
        let c = cat(StandardKind::Divisors(12));
        let d = cat(StandardKind::Discrete(6));
        assert!(matches!(
            functor_category(&d, &c, 1000),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        let j = cat(StandardKind::CommutativeSquare);
        let c = cat(StandardKind::TwoReps);
        let fast = enumerate_functors(&j, &c, DEFAULT_SEARCH_CAP).unwrap();
        let mut slow = Vec::new();
        for om in object_maps(j.num_objects(), c.num_objects()) {
            let choices: Vec<&[usize]> = j
                .arrows()
                .iter()
                .map(|a| c.hom(om[a.source], om[a.target]))
                .collect();
            let total: usize = choices.iter().map(|ch| ch.len()).product();
            for mut code in 0..total {
                let mut am = vec![0; choices.len()];
                for (slot, ch) in am.iter_mut().zip(&choices).rev() {
                    *slot = ch[code % ch.len()];
                    code /= ch.len();
                }
                let f = FinFunctor::new(j.clone(), c.clone(), om.clone(), am).unwrap();
                if check_functor(&f).passed {
                    slow.push(f);
                }
            }
        }
        assert_eq!(fast, slow);
    }

    fn closure_monad() -> Monad {
        let c = cat(StandardKind::Divisors(12));
        let top = c.object_index("12").unwrap();
        let t = FinFunctor::constant(&c, &c, top).unwrap();
        let id = FinFunctor::identity(&c);
        let unit_comps = (0..c.num_objects()).map(|x| c.hom(x, top)[0]).collect();
        let unit = NatTrans::new(id, t.clone(), unit_comps).unwrap();
        let tt = compose_functor(&t, &t).unwrap();
        let mult = NatTrans::new(tt, t.clone(), vec![c.identity(top); c.num_objects()]).unwrap();
        Monad::new(t, unit, mult).unwrap()
    }

    #[test]
    fn monads() {
        let c = cat(StandardKind::Chain(3));
        assert!(check_monad(&Monad::identity(&c)).passed);
        assert!(check_monad(&closure_monad()).passed);
    }

    #[test]
    fn broken_multiplication_breaks_a_unit_law() {
        // In a thin category every typed μ is lawful, so the perturbation
        // lives on z2: T = id, η = e, μ = g.
        let z = cat(StandardKind::z2());
        let id = FinFunctor::identity(&z);
        let unit = NatTrans::identity(&id);
        let g = z.arrow_index("g").unwrap();
        let tt = compose_functor(&id, &id).unwrap();
        let mult = NatTrans::new(tt, id.clone(), vec![g]).unwrap();
        let m = Monad::new(id, unit, mult).unwrap();
        let r = check_monad(&m);
        assert!(r.has_law("monad-unit-left") && r.has_law("monad-unit-right"));
    }

    #[test]
    fn kleisli_categories() {
        let c = cat(StandardKind::Divisors(12));
        let k = kleisli_category(&Monad::identity(&c)).unwrap();
        assert!(k.category.check_laws().passed);
        assert!(crate::category::find_isomorphism(&k.category, &c).is_some());

        let kc = kleisli_category(&closure_monad()).unwrap();
        assert!(kc.category.check_laws().passed);
        for a in 0..c.num_objects() {
            for b in 0..c.num_objects() {
                assert!(!kc.category.hom(a, b).is_empty());
            }
        }
    }
}
