//! Finite setoids as a concrete category: products, equalizers,
//! exponentials, slice exponentials built from inverse images, and the
//! Yoneda bijection for explicit presheaves.
//!
//! The category of all finite setoids is never built. Universal properties
//! are checked against every setoid with at most `k` elements.

use serde::{Deserialize, Serialize};

use crate::category::{Arrow, FinCategory};
use crate::error::{Error, Result};
use crate::report::LawReport;
use crate::transfor::{Cat, DEFAULT_SEARCH_CAP};

pub const DEFAULT_PROBE_SIZE: usize = 3;

/// A finite set with an equivalence relation, given by a class index per
/// element. Class indices are dense and numbered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinSetoid {
    class: Vec<usize>,
}

impl FinSetoid {
    /// Any labelling of the elements; equal labels mean equivalent.
    pub fn new(labels: &[usize]) -> Self {
        let mut seen: Vec<usize> = Vec::new();
        let class = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i,
                None => {
                    seen.push(*l);
                    seen.len() - 1
                }
            })
            .collect();
        FinSetoid { class }
    }

    pub fn discrete(n: usize) -> Self {
        FinSetoid {
            class: (0..n).collect(),
        }
    }

    /// `n` elements in a single class.
    pub fn indiscrete(n: usize) -> Self {
        FinSetoid { class: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.class.len()
    }

    pub fn num_classes(&self) -> usize {
        self.class.iter().max().map_or(0, |m| m + 1)
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class[x]
    }

    pub fn classes(&self) -> &[usize] {
        &self.class
    }

    pub fn equiv(&self, x: usize, y: usize) -> bool {
        self.class[x] == self.class[y]
    }

    /// Least element of each class, in class order.
    pub fn reps(&self) -> Vec<usize> {
        (0..self.num_classes())
            .map(|k| self.class.iter().position(|&c| c == k).unwrap())
            .collect()
    }

    /// Least element equivalent to `x`.
    pub fn rep(&self, x: usize) -> usize {
        self.class.iter().position(|&c| c == self.class[x]).unwrap()
    }

    /// The sub-setoid on `elements`, in the given order.
    pub fn restrict(&self, elements: &[usize]) -> FinSetoid {
        FinSetoid::new(&elements.iter().map(|&x| self.class[x]).collect::<Vec<_>>())
    }
}

/// A function between carriers that respects `≈`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetoidMap {
    pub source: FinSetoid,
    pub target: FinSetoid,
    pub func: Vec<usize>,
}

impl SetoidMap {
    pub fn new(source: FinSetoid, target: FinSetoid, func: Vec<usize>) -> Result<Self> {
        if func.len() != source.size() || func.iter().any(|&y| y >= target.size()) {
            return Err(Error::Structure(
                "function does not fit its carriers".into(),
            ));
        }
        let m = SetoidMap {
            source,
            target,
            func,
        };
        if !m.respects() {
            return Err(Error::Precondition("function does not respect ≈".into()));
        }
        Ok(m)
    }

    pub fn identity(x: &FinSetoid) -> Self {
        SetoidMap {
            source: x.clone(),
            target: x.clone(),
            func: (0..x.size()).collect(),
        }
    }

    pub fn respects(&self) -> bool {
        let n = self.source.size();
        (0..n).all(|x| {
            (x + 1..n)
                .all(|y| !self.source.equiv(x, y) || self.target.equiv(self.func[x], self.func[y]))
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.func[x]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &SetoidMap) -> Result<SetoidMap> {
        if f.target != self.source {
            return Err(Error::Typing("maps do not compose".into()));
        }
        Ok(SetoidMap {
            source: f.source.clone(),
            target: self.target.clone(),
            func: f.func.iter().map(|&x| self.func[x]).collect(),
        })
    }

    /// Pointwise `≈`, the equality of setoid morphisms.
    pub fn equiv(&self, other: &SetoidMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .func
                .iter()
                .zip(&other.func)
                .all(|(&a, &b)| self.target.equiv(a, b))
    }

    /// The representative of the class of `self` sending every element to
    /// the least element of its image class.
    pub fn canonical(&self) -> SetoidMap {
        SetoidMap {
            func: self.func.iter().map(|&y| self.target.rep(y)).collect(),
            ..self.clone()
        }
    }
}

/// Every function `n → m`, lexicographically.
fn all_functions(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if n == 0 {
        1
    } else {
        m.checked_pow(n as u32).unwrap_or(usize::MAX)
    };
    (0..total).map(move |mut k| {
        let mut f = vec![0; n];
        for slot in f.iter_mut().rev() {
            *slot = k % m;
            k /= m;
        }
        f
    })
}

/// Every respecting function `x → y`, lexicographically.
pub fn all_maps(x: &FinSetoid, y: &FinSetoid) -> Vec<SetoidMap> {
    all_functions(x.size(), y.size())
        .map(|func| SetoidMap {
            source: x.clone(),
            target: y.clone(),
            func,
        })
        .filter(SetoidMap::respects)
        .collect()
}

/// One canonical map per `≈`-class of maps `x → y`.
pub fn map_classes(x: &FinSetoid, y: &FinSetoid) -> Vec<SetoidMap> {
    let xr = x.reps();
    let yr = y.reps();
    all_functions(xr.len(), yr.len())
        .map(|choice| SetoidMap {
            source: x.clone(),
            target: y.clone(),
            func: (0..x.size()).map(|e| yr[choice[x.class_of(e)]]).collect(),
        })
        .collect()
}

/// Every setoid on `n` elements, one per partition, in restricted-growth
/// order.
pub fn all_setoids(n: usize) -> Vec<FinSetoid> {
    fn grow(labels: &mut Vec<usize>, n: usize, out: &mut Vec<FinSetoid>) {
        if labels.len() == n {
            out.push(FinSetoid::new(labels));
            return;
        }
        let next = labels.iter().max().map_or(0, |m| m + 1);
        for l in 0..=next {
            labels.push(l);
            grow(labels, n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), n, &mut out);
    out
}

/// Every setoid with at most `k` elements.
pub fn probe_setoids(k: usize) -> Vec<FinSetoid> {
    (0..=k).flat_map(all_setoids).collect()
}

pub fn terminal_setoid() -> FinSetoid {
    FinSetoid::discrete(1)
}

pub fn to_terminal(x: &FinSetoid) -> SetoidMap {
    SetoidMap {
        source: x.clone(),
        target: terminal_setoid(),
        func: vec![0; x.size()],
    }
}

/// The product with its projections; the pair `(a, b)` is element
/// `a * |Y| + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetoidProduct {
    pub setoid: FinSetoid,
    pub proj1: SetoidMap,
    pub proj2: SetoidMap,
}

impl SetoidProduct {
    pub fn pairing(&self, f: &SetoidMap, g: &SetoidMap) -> Result<SetoidMap> {
        if f.source != g.source || f.target != self.proj1.target || g.target != self.proj2.target {
            return Err(Error::Typing(
                "pairing legs do not match the product".into(),
            ));
        }
        let m = g.target.size();
        SetoidMap::new(
            f.source.clone(),
            self.setoid.clone(),
            f.func
                .iter()
                .zip(&g.func)
                .map(|(&a, &b)| a * m + b)
                .collect(),
        )
    }
}

pub fn product_setoid(x: &FinSetoid, y: &FinSetoid) -> SetoidProduct {
    let (n, m) = (x.size(), y.size());
    let labels: Vec<usize> = (0..n * m)
        .map(|k| x.class_of(k / m) * y.num_classes().max(1) + y.class_of(k % m))
        .collect();
    let setoid = FinSetoid::new(&labels);
    SetoidProduct {
        proj1: SetoidMap {
            source: setoid.clone(),
            target: x.clone(),
            func: (0..n * m).map(|k| k / m).collect(),
        },
        proj2: SetoidMap {
            source: setoid.clone(),
            target: y.clone(),
            func: (0..n * m).map(|k| k % m).collect(),
        },
        setoid,
    }
}

/// The sub-setoid where `f` and `g` agree up to `≈`, with its inclusion.
pub fn equalizer_setoid(f: &SetoidMap, g: &SetoidMap) -> Result<(FinSetoid, SetoidMap)> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::Precondition("equalizer of non-parallel maps".into()));
    }
    let elements: Vec<usize> = (0..f.source.size())
        .filter(|&x| f.target.equiv(f.func[x], g.func[x]))
        .collect();
    let e = f.source.restrict(&elements);
    let inclusion = SetoidMap {
        source: e.clone(),
        target: f.source.clone(),
        func: elements,
    };
    Ok((e, inclusion))
}

/// Respecting functions `x → y` with pointwise `≈`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSetoid {
    pub setoid: FinSetoid,
    pub maps: Vec<SetoidMap>,
}

impl HomSetoid {
    pub fn index_of(&self, f: &SetoidMap) -> Option<usize> {
        self.maps.iter().position(|m| m == f)
    }
}

pub fn hom_setoid(x: &FinSetoid, y: &FinSetoid) -> HomSetoid {
    let maps = all_maps(x, y);
    let reps: Vec<SetoidMap> = maps.iter().map(SetoidMap::canonical).collect();
    let labels: Vec<usize> = reps
        .iter()
        .map(|r| reps.iter().position(|s| s == r).unwrap())
        .collect();
    HomSetoid {
        setoid: FinSetoid::new(&labels),
        maps,
    }
}

/// `Y^X` together with evaluation `Y^X × X → Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponential {
    pub hom: HomSetoid,
    pub product: SetoidProduct,
    pub eval: SetoidMap,
}

impl Exponential {
    /// The curried map `z → Y^X` of `h : z × X → Y`.
    pub fn curry(&self, zx: &SetoidProduct, h: &SetoidMap) -> Option<SetoidMap> {
        let z = &zx.proj1.target;
        let x = &zx.proj2.target;
        let m = x.size();
        let func = (0..z.size())
            .map(|a| {
                let f = SetoidMap {
                    source: x.clone(),
                    target: h.target.clone(),
                    func: (0..m).map(|b| h.func[a * m + b]).collect(),
                };
                self.hom.index_of(&f)
            })
            .collect::<Option<Vec<_>>>()?;
        SetoidMap::new(z.clone(), self.hom.setoid.clone(), func).ok()
    }
}

pub fn exponential_setoid(x: &FinSetoid, y: &FinSetoid) -> Exponential {
    let hom = hom_setoid(x, y);
    let product = product_setoid(&hom.setoid, x);
    let m = x.size();
    let eval = SetoidMap {
        source: product.setoid.clone(),
        target: y.clone(),
        func: (0..product.setoid.size())
            .map(|k| hom.maps[k / m].func[k % m])
            .collect(),
    };
    Exponential { hom, product, eval }
}

fn count_factorizations(candidates: &[SetoidMap], ok: impl Fn(&SetoidMap) -> bool) -> usize {
    candidates.iter().filter(|u| ok(u)).count()
}

/// Universal property of the product against every probe of size `≤ k`.
pub fn verify_product(x: &FinSetoid, y: &FinSetoid, k: usize) -> LawReport {
    let p = product_setoid(x, y);
    let mut report = LawReport::new();
    for (zi, z) in probe_setoids(k).iter().enumerate() {
        let us = map_classes(z, &p.setoid);
        for f in map_classes(z, x) {
            for g in map_classes(z, y) {
                let n = count_factorizations(&us, |u| {
                    p.proj1.after(u).unwrap().equiv(&f) && p.proj2.after(u).unwrap().equiv(&g)
                });
                if n != 1 {
                    report.push(
                        "product-universal",
                        vec![zi],
                        format!(
                            "{n} factorizations from a probe of size {} (bound {k})",
                            z.size()
                        ),
                    );
                }
            }
        }
    }
    report
}

pub fn verify_terminal(k: usize) -> LawReport {
    let t = terminal_setoid();
    let mut report = LawReport::new();
    for (zi, z) in probe_setoids(k).iter().enumerate() {
        if map_classes(z, &t).len() != 1 {
            report.push(
                "terminal-universal",
                vec![zi],
                format!("probe of size {}", z.size()),
            );
        }
    }
    report
}

pub fn verify_equalizer(f: &SetoidMap, g: &SetoidMap, k: usize) -> Result<LawReport> {
    let (e, inc) = equalizer_setoid(f, g)?;
    let mut report = LawReport::new();
    for (zi, z) in probe_setoids(k).iter().enumerate() {
        let us = map_classes(z, &e);
        for h in map_classes(z, &f.source) {
            if !f.after(&h)?.equiv(&g.after(&h)?) {
                continue;
            }
            let n = count_factorizations(&us, |u| inc.after(u).unwrap().equiv(&h));
            if n != 1 {
                report.push(
                    "equalizer-universal",
                    vec![zi],
                    format!(
                        "{n} factorizations from a probe of size {} (bound {k})",
                        z.size()
                    ),
                );
            }
        }
    }
    Ok(report)
}

pub fn verify_exponential(x: &FinSetoid, y: &FinSetoid, k: usize) -> LawReport {
    let ex = exponential_setoid(x, y);
    let mut report = LawReport::new();
    for (zi, z) in probe_setoids(k).iter().enumerate() {
        let zx = product_setoid(z, x);
        let us = map_classes(z, &ex.hom.setoid);
        for h in map_classes(&zx.setoid, y) {
            let n = count_factorizations(&us, |u| {
                // eval ∘ (u × id_x)
                let m = x.size();
                let func = (0..zx.setoid.size())
                    .map(|p| ex.eval.func[u.func[p / m] * m + p % m])
                    .collect();
                let lhs = SetoidMap {
                    source: zx.setoid.clone(),
                    target: y.clone(),
                    func,
                };
                lhs.equiv(&h)
            });
            if n != 1 {
                report.push(
                    "exponential-universal",
                    vec![zi],
                    format!(
                        "{n} transposes from a probe of size {} (bound {k})",
                        z.size()
                    ),
                );
            }
        }
    }
    report
}

/// `f⁻¹(a)`: the elements sent into the class of `a`, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseImage {
    pub a: usize,
    pub map: SetoidMap,
    pub elements: Vec<usize>,
}

impl InverseImage {
    pub fn setoid(&self) -> FinSetoid {
        self.map.source.restrict(&self.elements)
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == x)
    }
}

pub fn inverse_image(a: usize, f: &SetoidMap) -> Result<InverseImage> {
    if a >= f.target.size() {
        return Err(Error::Structure(format!(
            "{a} is not an element of the base"
        )));
    }
    let elements = (0..f.source.size())
        .filter(|&x| f.target.equiv(f.func[x], a))
        .collect();
    Ok(InverseImage {
        a,
        map: f.clone(),
        elements,
    })
}

/// Rebases `v` at an equivalent element; the elements do not change.
pub fn inverse_image_transport(a2: usize, v: &InverseImage) -> Result<InverseImage> {
    let base = &v.map.target;
    if a2 >= base.size() || !base.equiv(v.a, a2) {
        return Err(Error::Precondition(format!(
            "{} and {a2} are not equivalent",
            v.a
        )));
    }
    Ok(InverseImage { a: a2, ..v.clone() })
}

/// A function `g⁻¹(a) → h⁻¹(a)`: `func[i]` is the image (an element of
/// the source of `h`) of the `i`th element of `g⁻¹(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseImageMap {
    pub a: usize,
    pub g: SetoidMap,
    pub h: SetoidMap,
    pub func: Vec<usize>,
}

impl InverseImageMap {
    pub fn new(a: usize, g: SetoidMap, h: SetoidMap, func: Vec<usize>) -> Result<Self> {
        if g.target != h.target {
            return Err(Error::Typing("maps over different bases".into()));
        }
        let m = InverseImageMap { a, g, h, func };
        m.verify()?;
        Ok(m)
    }

    pub fn domain(&self) -> InverseImage {
        inverse_image(self.a, &self.g).expect("checked base element")
    }

    /// Membership in `h⁻¹(a)` and coherence with `≈`.
    pub fn verify(&self) -> Result<()> {
        let dom = inverse_image(self.a, &self.g)?;
        if self.func.len() != dom.elements.len() {
            return Err(Error::Structure(
                "function does not fit the inverse image".into(),
            ));
        }
        let base = &self.h.target;
        for (i, &d) in self.func.iter().enumerate() {
            if d >= self.h.source.size() || !base.equiv(self.h.func[d], self.a) {
                return Err(Error::Typing(format!(
                    "image of element {} leaves h⁻¹(a)",
                    dom.elements[i]
                )));
            }
        }
        for i in 0..self.func.len() {
            for j in i + 1..self.func.len() {
                if self.g.source.equiv(dom.elements[i], dom.elements[j])
                    && !self.h.source.equiv(self.func[i], self.func[j])
                {
                    return Err(Error::Precondition("map is not coherent with ≈".into()));
                }
            }
        }
        Ok(())
    }

    /// Pointwise `≈` in the source of `h`, over the same base class.
    pub fn equiv(&self, other: &InverseImageMap) -> bool {
        self.g == other.g
            && self.h == other.h
            && self.g.target.equiv(self.a, other.a)
            && self
                .func
                .iter()
                .zip(&other.func)
                .all(|(&x, &y)| self.h.source.equiv(x, y))
    }
}

pub fn inverse_image_map_transport(a2: usize, m: &InverseImageMap) -> Result<InverseImageMap> {
    let base = &m.g.target;
    if a2 >= base.size() || !base.equiv(m.a, a2) {
        return Err(Error::Precondition(format!(
            "{} and {a2} are not equivalent",
            m.a
        )));
    }
    let moved = InverseImageMap { a: a2, ..m.clone() };
    moved.verify()?;
    Ok(moved)
}

/// Every coherent map `g⁻¹(a) → h⁻¹(a)`, lexicographically.
pub fn inverse_image_maps(a: usize, g: &SetoidMap, h: &SetoidMap) -> Result<Vec<InverseImageMap>> {
    let dom = inverse_image(a, g)?;
    let cod = inverse_image(a, h)?;
    Ok(all_functions(dom.elements.len(), cod.elements.len())
        .filter_map(|choice| {
            let func = choice.iter().map(|&i| cod.elements[i]).collect();
            InverseImageMap::new(a, g.clone(), h.clone(), func).ok()
        })
        .collect())
}

/// `Σ (a : A) (g⁻¹(a) → h⁻¹(a))` with its projection to `A`, fibers indexed
/// by one chosen element per class of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceExponential {
    pub setoid: FinSetoid,
    pub projection: SetoidMap,
    pub fibers: Vec<InverseImageMap>,
}

impl SliceExponential {
    pub fn index_of(&self, m: &InverseImageMap) -> Option<usize> {
        self.fibers.iter().position(|f| f == m)
    }
}

pub fn slice_exponential(
    base: &FinSetoid,
    g: &SetoidMap,
    h: &SetoidMap,
) -> Result<SliceExponential> {
    slice_exponential_with_reps(base, g, h, &base.reps())
}

/// [`slice_exponential`] with `reps[k]` standing for class `k` of the base.
pub fn slice_exponential_with_reps(
    base: &FinSetoid,
    g: &SetoidMap,
    h: &SetoidMap,
    reps: &[usize],
) -> Result<SliceExponential> {
    if g.target != *base || h.target != *base {
        return Err(Error::Typing("maps must land in the base".into()));
    }
    if reps.len() != base.num_classes()
        || reps
            .iter()
            .enumerate()
            .any(|(k, &r)| r >= base.size() || base.class_of(r) != k)
    {
        return Err(Error::Precondition(
            "one representative per class is required".into(),
        ));
    }
    let mut fibers = Vec::new();
    for &a in reps {
        fibers.extend(inverse_image_maps(a, g, h)?);
    }
    let labels: Vec<usize> = fibers
        .iter()
        .map(|m| fibers.iter().position(|o| o.equiv(m)).unwrap())
        .collect();
    let setoid = FinSetoid::new(&labels);
    let projection = SetoidMap::new(
        setoid.clone(),
        base.clone(),
        fibers.iter().map(|m| m.a).collect(),
    )?;
    Ok(SliceExponential {
        setoid,
        projection,
        fibers,
    })
}

/// Slice objects `(B, f : B → A)` and slice morphisms `(source, target,
/// map)` between them, used to probe the locally cartesian closed
/// structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeFamily {
    pub objects: Vec<SetoidMap>,
    pub morphisms: Vec<(usize, usize, SetoidMap)>,
}

/// Maps `u : p → q` over the base with `q ∘ u ≈ p`, one per class.
pub fn slice_maps(p: &SetoidMap, q: &SetoidMap) -> Vec<SetoidMap> {
    map_classes(&p.source, &q.source)
        .into_iter()
        .filter(|u| q.after(u).map(|qu| qu.equiv(p)).unwrap_or(false))
        .collect()
}

/// Every slice object over `base` with at most `k` elements (one per class
/// of structure map) and every slice morphism between them (one per class).
pub fn probe_family(base: &FinSetoid, k: usize) -> ProbeFamily {
    let objects: Vec<SetoidMap> = probe_setoids(k)
        .iter()
        .flat_map(|b| map_classes(b, base))
        .collect();
    let mut morphisms = Vec::new();
    for (i, p) in objects.iter().enumerate() {
        for (j, q) in objects.iter().enumerate() {
            for u in slice_maps(p, q) {
                morphisms.push((i, j, u));
            }
        }
    }
    ProbeFamily { objects, morphisms }
}

/// The pullback `B ×_A C` of `f` and `g`, as pairs `(b, c)` with
/// `f(b) ≈ g(c)`, with its projections.
fn slice_pullback(f: &SetoidMap, g: &SetoidMap) -> (FinSetoid, Vec<(usize, usize)>) {
    let base = &f.target;
    let mut pairs = Vec::new();
    for b in 0..f.source.size() {
        for c in 0..g.source.size() {
            if base.equiv(f.func[b], g.func[c]) {
                pairs.push((b, c));
            }
        }
    }
    let nc = g.source.num_classes().max(1);
    let labels: Vec<usize> = pairs
        .iter()
        .map(|&(b, c)| f.source.class_of(b) * nc + g.source.class_of(c))
        .collect();
    (FinSetoid::new(&labels), pairs)
}

/// Checks `Hom_A(B ×_A C, D) ≅ Hom_A(B, D^C)` for every probe: class
/// counts, the currying bijection `b ↦ (f(b), c ↦ α(b, c))` and its
/// inverse, and naturality along every probe morphism.
pub fn verify_lcc(
    base: &FinSetoid,
    g: &SetoidMap,
    h: &SetoidMap,
    probes: &ProbeFamily,
) -> Result<LawReport> {
    let x = slice_exponential(base, g, h)?;
    for f in &probes.objects {
        if f.target != *base {
            return Err(Error::Typing("probe does not live over the base".into()));
        }
    }
    for (i, j, u) in &probes.morphisms {
        let (p, q) = match (probes.objects.get(*i), probes.objects.get(*j)) {
            (Some(p), Some(q)) => (p, q),
            _ => {
                return Err(Error::Structure(
                    "probe morphism endpoint out of range".into(),
                ))
            }
        };
        if u.source != p.source || u.target != q.source || !q.after(u)?.equiv(p) {
            return Err(Error::Typing(format!(
                "probe morphism {i} → {j} is not over the base"
            )));
        }
    }

    let mut report = LawReport::new();
    let d_over = h;
    // the curried map of α, as a function B → X
    let curry = |f: &SetoidMap, pairs: &[(usize, usize)], alpha: &SetoidMap| -> Option<SetoidMap> {
        let func = (0..f.source.size())
            .map(|b| {
                let a = base.reps()[base.class_of(f.func[b])];
                let dom = inverse_image(a, g).ok()?;
                let func = dom
                    .elements
                    .iter()
                    .map(|&c| {
                        pairs
                            .iter()
                            .position(|&pc| pc == (b, c))
                            .map(|k| alpha.func[k])
                    })
                    .collect::<Option<Vec<_>>>()?;
                x.index_of(&InverseImageMap {
                    a,
                    g: g.clone(),
                    h: h.clone(),
                    func,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        SetoidMap::new(f.source.clone(), x.setoid.clone(), func).ok()
    };
    let uncurry = |pb: &FinSetoid, pairs: &[(usize, usize)], u: &SetoidMap| -> Option<SetoidMap> {
        let func = pairs
            .iter()
            .map(|&(b, c)| {
                let m = &x.fibers[u.func[b]];
                let pos = m.domain().position(c)?;
                Some(m.func[pos])
            })
            .collect::<Option<Vec<_>>>()?;
        SetoidMap::new(pb.clone(), h.source.clone(), func).ok()
    };

    let mut pullbacks = Vec::with_capacity(probes.objects.len());
    for (pi, f) in probes.objects.iter().enumerate() {
        let (pb, pairs) = slice_pullback(f, g);
        let pb_map = SetoidMap {
            source: pb.clone(),
            target: base.clone(),
            func: pairs.iter().map(|&(b, _)| f.func[b]).collect(),
        };
        let left = slice_maps(&pb_map, d_over);
        let right = slice_maps(f, &x.projection);
        if left.len() != right.len() {
            report.push(
                "lcc-cardinality",
                vec![pi],
                format!(
                    "{} maps out of the pullback, {} into the exponential",
                    left.len(),
                    right.len()
                ),
            );
        }
        for alpha in &left {
            let back = curry(f, &pairs, alpha).and_then(|u| uncurry(&pb, &pairs, &u));
            if !matches!(back, Some(b) if b.equiv(alpha)) {
                report.push(
                    "lcc-round-trip",
                    vec![pi],
                    "uncurry ∘ curry differs from the identity",
                );
            }
        }
        for u in &right {
            let back = uncurry(&pb, &pairs, u).and_then(|a| curry(f, &pairs, &a));
            if !matches!(back, Some(b) if b.equiv(u)) {
                report.push(
                    "lcc-round-trip",
                    vec![pi],
                    "curry ∘ uncurry differs from the identity",
                );
            }
        }
        pullbacks.push((pb, pairs, pb_map));
    }

    // φ(α ∘ (k ×_A id)) ≈ φ(α) ∘ k for k : (B, f) → (B', f')
    for (mi, (i, j, k)) in probes.morphisms.iter().enumerate() {
        let (_, pairs, pb_map) = &pullbacks[*j];
        let (spb, spairs, _) = &pullbacks[*i];
        let shifted: Vec<usize> = spairs
            .iter()
            .map(|&(b, c)| pairs.iter().position(|&p| p == (k.func[b], c)).unwrap())
            .collect();
        for alpha in slice_maps(pb_map, d_over) {
            let moved = SetoidMap {
                source: spb.clone(),
                target: alpha.target.clone(),
                func: shifted.iter().map(|&p| alpha.func[p]).collect(),
            };
            let lhs = curry(&probes.objects[*i], spairs, &moved);
            let rhs = curry(&probes.objects[*j], pairs, &alpha).and_then(|u| u.after(k).ok());
            if !matches!((lhs, rhs), (Some(l), Some(r)) if l.equiv(&r)) {
                report.push(
                    "lcc-natural",
                    vec![mi],
                    format!("square along probe morphism {i} → {j} fails"),
                );
            }
        }
    }
    Ok(report)
}

/// The category whose objects are the given setoids and whose arrows are
/// all respecting functions between them, `≈` being pointwise.
pub fn setoid_category(objects: &[FinSetoid]) -> Result<FinCategory> {
    let mut arrows = Vec::new();
    let mut maps: Vec<SetoidMap> = Vec::new();
    for (s, x) in objects.iter().enumerate() {
        for (t, y) in objects.iter().enumerate() {
            for m in all_maps(x, y) {
                let digits: String = m.func.iter().map(|d| d.to_string()).collect();
                arrows.push(Arrow::new(s, t, format!("m{s}_{t}_{digits}")));
                maps.push(m);
            }
        }
    }
    let eq = (0..maps.len())
        .map(|i| {
            (0..maps.len())
                .find(|&j| {
                    arrows[j].source == arrows[i].source
                        && arrows[j].target == arrows[i].target
                        && maps[j].equiv(&maps[i])
                })
                .unwrap()
        })
        .collect();
    let identities = (0..objects.len())
        .map(|s| {
            (0..maps.len())
                .find(|&i| {
                    arrows[i].source == s
                        && arrows[i].target == s
                        && maps[i] == SetoidMap::identity(&objects[s])
                })
                .unwrap()
        })
        .collect();
    FinCategory::from_fn(
        (0..objects.len()).map(|s| format!("S{s}")).collect(),
        arrows.clone(),
        eq,
        identities,
        |g, f| {
            let gf = maps[g].after(&maps[f]).ok()?;
            (0..maps.len()).find(|&k| {
                arrows[k].source == arrows[f].source
                    && arrows[k].target == arrows[g].target
                    && maps[k] == gf
            })
        },
    )
}

/// A contravariant functor `C → Setoids` given explicitly: a setoid per
/// object and, per arrow `f : x → y`, a map `F y → F x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    pub category: Cat,
    pub sets: Vec<FinSetoid>,
    pub maps: Vec<SetoidMap>,
}

impl Presheaf {
    pub fn new(category: Cat, sets: Vec<FinSetoid>, maps: Vec<SetoidMap>) -> Result<Self> {
        if sets.len() != category.num_objects() || maps.len() != category.num_arrows() {
            return Err(Error::Structure(
                "presheaf data does not match the category".into(),
            ));
        }
        for (f, m) in maps.iter().enumerate() {
            let (x, y) = (category.source(f), category.target(f));
            if m.source != sets[y] || m.target != sets[x] {
                return Err(Error::Typing(format!(
                    "action of {} is ill-typed",
                    category.label(f)
                )));
            }
        }
        Ok(Presheaf {
            category,
            sets,
            maps,
        })
    }

    /// Same setoid at every object, identity action.
    pub fn constant(c: &Cat, s: FinSetoid) -> Self {
        Presheaf {
            category: c.clone(),
            sets: vec![s.clone(); c.num_objects()],
            maps: vec![SetoidMap::identity(&s); c.num_arrows()],
        }
    }

    pub fn terminal(c: &Cat) -> Self {
        Presheaf::constant(c, terminal_setoid())
    }

    pub fn check_laws(&self) -> LawReport {
        check_presheaf(self)
    }
}

/// Identity, composition (contravariantly) and respect of `≈` on arrows.
pub fn check_presheaf(p: &Presheaf) -> LawReport {
    let c = &p.category;
    let mut report = LawReport::new();
    for x in 0..c.num_objects() {
        if !p.maps[c.identity(x)].equiv(&SetoidMap::identity(&p.sets[x])) {
            report.push(
                "presheaf-identity",
                vec![x],
                format!("F(id) ≉ id at {}", c.object_name(x)),
            );
        }
    }
    for g in 0..c.num_arrows() {
        for f in 0..c.num_arrows() {
            let Some(gf) = c.composite(g, f) else {
                continue;
            };
            let ok = p.maps[f]
                .after(&p.maps[g])
                .map(|fg| fg.equiv(&p.maps[gf]))
                .unwrap_or(false);
            if !ok {
                report.push(
                    "presheaf-composition",
                    vec![g, f],
                    format!(
                        "F({} ∘ {}) ≉ F({}) ∘ F({})",
                        c.label(g),
                        c.label(f),
                        c.label(f),
                        c.label(g)
                    ),
                );
            }
        }
    }
    for f in 0..c.num_arrows() {
        for g in f + 1..c.num_arrows() {
            if c.equiv(f, g) && !p.maps[f].equiv(&p.maps[g]) {
                report.push(
                    "presheaf-resp-equiv",
                    vec![f, g],
                    format!("{} ≈ {} but their actions differ", c.label(f), c.label(g)),
                );
            }
        }
    }
    report
}

/// `y(x) = Hom(−, x)` acting by precomposition. Element `i` of `y(x)(z)`
/// is the `i`th arrow of `Hom(z, x)`.
pub fn representable(c: &Cat, x: usize) -> Presheaf {
    let sets: Vec<FinSetoid> = (0..c.num_objects())
        .map(|z| {
            FinSetoid::new(
                &c.hom(z, x)
                    .iter()
                    .map(|&h| c.eq_class(h))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let maps = (0..c.num_arrows())
        .map(|f| {
            let (z, w) = (c.source(f), c.target(f));
            let func = c
                .hom(w, x)
                .iter()
                .map(|&h| {
                    let hf = c.c(h, f);
                    c.hom(z, x).iter().position(|&k| k == hf).unwrap()
                })
                .collect();
            SetoidMap {
                source: sets[w].clone(),
                target: sets[z].clone(),
                func,
            }
        })
        .collect();
    Presheaf {
        category: c.clone(),
        sets,
        maps,
    }
}

/// A family of component maps `P x → Q x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMorphism {
    pub components: Vec<SetoidMap>,
}

impl PresheafMorphism {
    pub fn equiv(&self, other: &PresheafMorphism) -> bool {
        self.components
            .iter()
            .zip(&other.components)
            .all(|(a, b)| a.equiv(b))
    }
}

pub fn is_natural(p: &Presheaf, q: &Presheaf, t: &PresheafMorphism) -> bool {
    let c = &p.category;
    (0..c.num_arrows()).all(|f| {
        let (x, y) = (c.source(f), c.target(f));
        // Q f ∘ τ_y ≈ τ_x ∘ P f
        match (
            q.maps[f].after(&t.components[y]),
            t.components[x].after(&p.maps[f]),
        ) {
            (Ok(l), Ok(r)) => l.equiv(&r),
            _ => false,
        }
    })
}

/// Every natural family `P ⇒ Q`, one per class under pointwise `≈`.
pub fn enumerate_nat_transfs(p: &Presheaf, q: &Presheaf) -> Result<Vec<PresheafMorphism>> {
    for (name, r) in [("source", check_presheaf(p)), ("target", check_presheaf(q))] {
        if !r.passed {
            let mut report = LawReport::new();
            report.absorb(name, r);
            return Err(Error::Laws(report));
        }
    }
    if p.category != q.category {
        return Err(Error::Mismatch("presheaves on different categories".into()));
    }
    let c = &p.category;
    let n = c.num_objects();
    let choices: Vec<Vec<SetoidMap>> = (0..n)
        .map(|x| map_classes(&p.sets[x], &q.sets[x]))
        .collect();
    let space = choices
        .iter()
        .fold(1u128, |acc, ch| acc.saturating_mul(ch.len() as u128));
    let mut out = Vec::new();
    let mut chosen: Vec<SetoidMap> = Vec::with_capacity(n);
    let mut visited = 0u128;
    fn go(
        p: &Presheaf,
        q: &Presheaf,
        choices: &[Vec<SetoidMap>],
        chosen: &mut Vec<SetoidMap>,
        out: &mut Vec<PresheafMorphism>,
        visited: &mut u128,
        space: u128,
    ) -> Result<()> {
        *visited += 1;
        if *visited > DEFAULT_SEARCH_CAP {
            return Err(Error::TooLarge {
                candidates: space,
                cap: DEFAULT_SEARCH_CAP,
            });
        }
        let c = &p.category;
        let k = chosen.len();
        if k == choices.len() {
            out.push(PresheafMorphism {
                components: chosen.clone(),
            });
            return Ok(());
        }
        for m in &choices[k] {
            chosen.push(m.clone());
            let ok = (0..c.num_arrows()).all(|f| {
                let (x, y) = (c.source(f), c.target(f));
                if x.max(y) != k {
                    return true;
                }
                match (q.maps[f].after(&chosen[y]), chosen[x].after(&p.maps[f])) {
                    (Ok(l), Ok(r)) => l.equiv(&r),
                    _ => false,
                }
            });
            if ok {
                go(p, q, choices, chosen, out, visited, space)?;
            }
            chosen.pop();
        }
        Ok(())
    }
    go(p, q, &choices, &mut chosen, &mut out, &mut visited, space)?;
    Ok(out)
}

/// The bijection `Nat[y x, F] ≅ F x` at one object, with both directions
/// checked and the naturality squares in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YonedaCheck {
    pub object: usize,
    pub nat_classes: usize,
    pub value_classes: usize,
    /// Class of `F x` hit by each enumerated transformation.
    pub forward: Vec<usize>,
    pub report: LawReport,
}

pub fn yoneda_check(f: &Presheaf, x: usize) -> Result<YonedaCheck> {
    let c = f.category.clone();
    let yx = representable(&c, x);
    let nats = enumerate_nat_transfs(&yx, f)?;
    let fx = &f.sets[x];
    let id_pos = c
        .hom(x, x)
        .iter()
        .position(|&h| h == c.identity(x))
        .unwrap();
    let mut report = LawReport::new();

    let forward: Vec<usize> = nats.iter().map(|t| t.components[x].func[id_pos]).collect();
    // element e ↦ τ with τ_z(h) = F(h)(e)
    let backward = |e: usize| PresheafMorphism {
        components: (0..c.num_objects())
            .map(|z| SetoidMap {
                source: yx.sets[z].clone(),
                target: f.sets[z].clone(),
                func: c.hom(z, x).iter().map(|&h| f.maps[h].func[e]).collect(),
            })
            .collect(),
    };

    if nats.len() != fx.num_classes() {
        report.push(
            "yoneda-cardinality",
            vec![x],
            format!(
                "{} transformations, {} classes in F x",
                nats.len(),
                fx.num_classes()
            ),
        );
    }
    for (i, t) in nats.iter().enumerate() {
        if !backward(forward[i]).equiv(t) {
            report.push(
                "yoneda-round-trip",
                vec![x, i],
                "transformation not recovered from its value",
            );
        }
    }
    for e in fx.reps() {
        let t = backward(e);
        if !t.components.iter().all(SetoidMap::respects) || !is_natural(&yx, f, &t) {
            report.push(
                "yoneda-inverse-natural",
                vec![x, e],
                "inverse image is not natural",
            );
            continue;
        }
        if !fx.equiv(t.components[x].func[id_pos], e) {
            report.push(
                "yoneda-round-trip",
                vec![x, e],
                "value not recovered from its transformation",
            );
        }
        if !nats.iter().any(|n| n.equiv(&t)) {
            report.push(
                "yoneda-round-trip",
                vec![x, e],
                "inverse image missing from the enumeration",
            );
        }
    }
    // naturality in x: for g : x' → x, τ_{x'}(g) ≈ F(g)(τ_x(id_x))
    for g in 0..c.num_arrows() {
        if c.target(g) != x {
            continue;
        }
        let x2 = c.source(g);
        let pos = c.hom(x2, x).iter().position(|&h| h == g).unwrap();
        for (i, t) in nats.iter().enumerate() {
            let lhs = t.components[x2].func[pos];
            let rhs = f.maps[g].func[forward[i]];
            if !f.sets[x2].equiv(lhs, rhs) {
                report.push(
                    "yoneda-natural",
                    vec![g, i],
                    format!("square along {} fails", c.label(g)),
                );
            }
        }
    }
    Ok(YonedaCheck {
        object: x,
        nat_classes: nats.len(),
        value_classes: fx.num_classes(),
        forward: forward.iter().map(|&e| fx.class_of(e)).collect(),
        report,
    })
}

/// Representables of every object, the terminal presheaf, and constant
/// presheaves on a discrete and an indiscrete pair.
pub fn standard_presheaves(c: &Cat) -> Vec<Presheaf> {
    let mut out: Vec<Presheaf> = (0..c.num_objects()).map(|x| representable(c, x)).collect();
    out.push(Presheaf::terminal(c));
    out.push(Presheaf::constant(c, FinSetoid::discrete(2)));
    out.push(Presheaf::constant(c, FinSetoid::indiscrete(2)));
    out
}
