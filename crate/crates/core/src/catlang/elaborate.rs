use std::collections::HashMap;
use std::sync::Arc;

use super::saturate::{saturate, SaturationConfig};
use super::{
    CategoryBody, Document, DslError, DslResult, FunctorDecl, FunctorKind, Item, Name, NatDecl,
    Pos, TableBody, Word,
};
use crate::category::{Arrow, FinCategory};
use crate::transfor::{check_functor, check_natural, compose_functor, Cat, FinFunctor, NatTrans};

#[derive(Clone, Debug)]
pub struct NamedFunctor {
    pub name: String,
    pub kind: FunctorKind,
    pub functor: FinFunctor,
}

/// Everything a document declares, in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Elaborated {
    pub categories: Vec<(String, Cat)>,
    pub functors: Vec<NamedFunctor>,
    pub nats: Vec<(String, NatTrans)>,
}

impl Elaborated {
    pub fn category(&self, name: &str) -> Option<&Cat> {
        self.categories
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }

    pub fn functor(&self, name: &str) -> Option<&NamedFunctor> {
        self.functors.iter().find(|f| f.name == name)
    }

    pub fn diagrams(&self) -> impl Iterator<Item = &NamedFunctor> {
        self.functors
            .iter()
            .filter(|f| f.kind == FunctorKind::Diagram)
    }

    pub fn nat(&self, name: &str) -> Option<&NatTrans> {
        self.nats.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }
}

fn reference(name: &Name, kind: &str) -> DslError {
    DslError::Reference {
        pos: name.pos,
        kind: kind.into(),
        name: name.text.clone(),
    }
}

fn typing(pos: Pos, message: String) -> DslError {
    DslError::Typing { pos, message }
}

fn index_names(names: &[Name], kind: &str) -> DslResult<HashMap<String, usize>> {
    let mut out = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if out.insert(n.text.clone(), i).is_some() {
            return Err(DslError::Declaration {
                pos: n.pos,
                message: format!("{kind} `{}` declared twice", n.text),
            });
        }
    }
    Ok(out)
}

fn lookup(map: &HashMap<String, usize>, name: &Name, kind: &str) -> DslResult<usize> {
    map.get(&name.text)
        .copied()
        .ok_or_else(|| reference(name, kind))
}

/// Builds a category from an explicit table and checks its laws.
///
/// Composites with a designated identity may be left out; they default to
/// the other arrow. Missing composites elsewhere are reported as totality
/// violations.
pub fn elaborate_table(name: &str, t: &TableBody) -> DslResult<FinCategory> {
    let objs = index_names(&t.objects, "object")?;
    let arrow_names: Vec<Name> = t.arrows.iter().map(|a| a.name.clone()).collect();
    let arrs = index_names(&arrow_names, "arrow")?;
    let mut arrows = Vec::with_capacity(t.arrows.len());
    for a in &t.arrows {
        arrows.push(Arrow::new(
            lookup(&objs, &a.source, "object")?,
            lookup(&objs, &a.target, "object")?,
            a.name.text.clone(),
        ));
    }
    let n = t.objects.len();
    let m = arrows.len();

    let mut identities = vec![None; n];
    for (x, f) in &t.identities {
        let xi = lookup(&objs, x, "object")?;
        let fi = lookup(&arrs, f, "arrow")?;
        if arrows[fi].source != xi || arrows[fi].target != xi {
            return Err(typing(
                f.pos,
                format!("identity `{}` is not an endo-arrow on `{}`", f.text, x.text),
            ));
        }
        if identities[xi].replace(fi).is_some() {
            return Err(DslError::Declaration {
                pos: x.pos,
                message: format!("object `{}` has two identities", x.text),
            });
        }
    }
    let mut ids = Vec::with_capacity(n);
    for (x, id) in identities.iter().enumerate() {
        match id {
            Some(i) => ids.push(*i),
            None => {
                return Err(DslError::Declaration {
                    pos: t.objects[x].pos,
                    message: format!("object `{}` has no identity", t.objects[x].text),
                })
            }
        }
    }

    let mut comp: Vec<Option<usize>> = vec![None; m * m];
    let mut explicit = vec![false; m * m];
    for e in &t.compose {
        let g = lookup(&arrs, &e.g, "arrow")?;
        let f = lookup(&arrs, &e.f, "arrow")?;
        let h = lookup(&arrs, &e.h, "arrow")?;
        if arrows[f].target != arrows[g].source {
            return Err(typing(
                e.g.pos,
                format!("`{}.{}` is not a composable pair", e.g.text, e.f.text),
            ));
        }
        if arrows[h].source != arrows[f].source || arrows[h].target != arrows[g].target {
            return Err(typing(
                e.h.pos,
                format!(
                    "`{}` does not have the endpoints of `{}.{}`",
                    e.h.text, e.g.text, e.f.text
                ),
            ));
        }
        if explicit[g * m + f] && comp[g * m + f] != Some(h) {
            return Err(DslError::Declaration {
                pos: e.g.pos,
                message: format!("`{}.{}` given two different composites", e.g.text, e.f.text),
            });
        }
        explicit[g * m + f] = true;
        comp[g * m + f] = Some(h);
    }
    for g in 0..m {
        for f in 0..m {
            if explicit[g * m + f] || arrows[f].target != arrows[g].source {
                continue;
            }
            if ids[arrows[f].source] == f {
                comp[g * m + f] = Some(g);
            } else if ids[arrows[g].source] == g {
                comp[g * m + f] = Some(f);
            }
        }
    }

    let mut class: Vec<usize> = (0..m).collect();
    fn find(class: &mut [usize], mut x: usize) -> usize {
        while class[x] != x {
            class[x] = class[class[x]];
            x = class[x];
        }
        x
    }
    for (a, b) in &t.equiv {
        let ai = lookup(&arrs, a, "arrow")?;
        let bi = lookup(&arrs, b, "arrow")?;
        if arrows[ai].source != arrows[bi].source || arrows[ai].target != arrows[bi].target {
            return Err(typing(
                a.pos,
                format!("`{}` ~ `{}` relates non-parallel arrows", a.text, b.text),
            ));
        }
        let (ra, rb) = (find(&mut class, ai), find(&mut class, bi));
        class[ra.max(rb)] = ra.min(rb);
    }
    let class: Vec<usize> = (0..m).map(|f| find(&mut class, f)).collect();

    let objects = t.objects.iter().map(|o| o.text.clone()).collect();
    let cat = FinCategory::from_parts(objects, arrows, class, comp, ids)?;
    let report = cat.check_laws();
    if !report.passed {
        return Err(DslError::Law {
            name: name.into(),
            report,
        });
    }
    Ok(cat)
}

/// Evaluates a word in `c`. `expected` pins the endpoints an `id` needs,
/// or that the composite must have.
pub fn eval_word(
    c: &FinCategory,
    word: &Word,
    expected: Option<(usize, usize)>,
) -> DslResult<usize> {
    match word {
        Word::Id(pos) => match expected {
            Some((a, b)) if a == b => Ok(c.identity(a)),
            Some((a, b)) => Err(typing(
                *pos,
                format!(
                    "`id` cannot stand for an arrow {} -> {}",
                    c.object_name(a),
                    c.object_name(b)
                ),
            )),
            None => Err(typing(*pos, "cannot infer the object of `id`".into())),
        },
        Word::Path(names) => {
            let mut acc: Option<usize> = None;
            for n in names.iter().rev() {
                let f = c
                    .arrow_index(&n.text)
                    .ok_or_else(|| reference(n, "arrow"))?;
                acc = Some(match acc {
                    None => f,
                    Some(prev) => c.composite(f, prev).ok_or_else(|| {
                        typing(
                            n.pos,
                            format!("`{}` cannot follow `{}`", n.text, c.label(prev)),
                        )
                    })?,
                });
            }
            let f = acc.expect("words are nonempty");
            if let Some((a, b)) = expected {
                if c.source(f) != a || c.target(f) != b {
                    return Err(typing(
                        word.pos(),
                        format!(
                            "word has type {} -> {}, expected {} -> {}",
                            c.object_name(c.source(f)),
                            c.object_name(c.target(f)),
                            c.object_name(a),
                            c.object_name(b)
                        ),
                    ));
                }
            }
            Ok(f)
        }
    }
}

fn default_image(c: &FinCategory, a: usize, b: usize) -> Option<usize> {
    match c.hom_classes(a, b).as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}

fn elaborate_functor(env: &Elaborated, d: &FunctorDecl) -> DslResult<FinFunctor> {
    let src = env
        .category(&d.source.text)
        .ok_or_else(|| reference(&d.source, "category"))?
        .clone();
    let tgt = env
        .category(&d.target.text)
        .ok_or_else(|| reference(&d.target, "category"))?
        .clone();
    let mut obj_map = vec![None; src.num_objects()];
    for (a, x) in &d.objs {
        let ai = src
            .object_index(&a.text)
            .ok_or_else(|| reference(a, "object"))?;
        let xi = tgt
            .object_index(&x.text)
            .ok_or_else(|| reference(x, "object"))?;
        if obj_map[ai].replace(xi).is_some() {
            return Err(DslError::Declaration {
                pos: a.pos,
                message: format!("object `{}` mapped twice", a.text),
            });
        }
    }
    let obj_map: Vec<usize> = obj_map
        .iter()
        .enumerate()
        .map(|(a, x)| {
            x.ok_or_else(|| DslError::Declaration {
                pos: d.name.pos,
                message: format!(
                    "`{}` has no image for object `{}`",
                    d.name.text,
                    src.object_name(a)
                ),
            })
        })
        .collect::<DslResult<_>>()?;

    let mut arr_map = vec![None; src.num_arrows()];
    for (f, w) in &d.arrs {
        let fi = src
            .arrow_index(&f.text)
            .ok_or_else(|| reference(f, "arrow"))?;
        let want = (obj_map[src.source(fi)], obj_map[src.target(fi)]);
        let g = eval_word(&tgt, w, Some(want))?;
        if arr_map[fi].replace(g).is_some() {
            return Err(DslError::Declaration {
                pos: f.pos,
                message: format!("arrow `{}` mapped twice", f.text),
            });
        }
    }
    let mut arrs = Vec::with_capacity(src.num_arrows());
    for f in 0..src.num_arrows() {
        let (a, b) = (obj_map[src.source(f)], obj_map[src.target(f)]);
        let image = arr_map[f].or_else(|| {
            if src.is_identity(f) {
                Some(tgt.identity(a))
            } else {
                default_image(&tgt, a, b)
            }
        });
        match image {
            Some(g) => arrs.push(g),
            None => {
                return Err(DslError::Declaration {
                    pos: d.name.pos,
                    message: format!(
                        "`{}` has no image for arrow `{}`",
                        d.name.text,
                        src.label(f)
                    ),
                })
            }
        }
    }
    let func = FinFunctor::new(src, tgt, obj_map, arrs)?;
    let report = check_functor(&func);
    if !report.passed {
        return Err(DslError::Law {
            name: d.name.text.clone(),
            report,
        });
    }
    Ok(func)
}

fn functor_expr(env: &Elaborated, names: &[Name]) -> DslResult<FinFunctor> {
    let mut acc: Option<FinFunctor> = None;
    for n in names.iter().rev() {
        let f = env
            .functor(&n.text)
            .ok_or_else(|| reference(n, "functor"))?
            .functor
            .clone();
        acc = Some(match acc {
            None => f,
            Some(prev) => compose_functor(&f, &prev).map_err(|e| typing(n.pos, e.to_string()))?,
        });
    }
    Ok(acc.expect("functor expressions are nonempty"))
}

fn elaborate_nat(env: &Elaborated, d: &NatDecl) -> DslResult<NatTrans> {
    let f = functor_expr(env, &d.source)?;
    let g = functor_expr(env, &d.target)?;
    let (src, tgt) = (f.source().clone(), f.target().clone());
    let mut comps = vec![None; src.num_objects()];
    for (x, w) in &d.components {
        let xi = src
            .object_index(&x.text)
            .ok_or_else(|| reference(x, "object"))?;
        let want = (f.obj(xi), g.obj(xi));
        let c = eval_word(&tgt, w, Some(want))?;
        if comps[xi].replace(c).is_some() {
            return Err(DslError::Declaration {
                pos: x.pos,
                message: format!("component at `{}` given twice", x.text),
            });
        }
    }
    let mut components = Vec::with_capacity(comps.len());
    for (x, c) in comps.iter().enumerate() {
        let (a, b) = (f.obj(x), g.obj(x));
        let c = c.or_else(|| default_image(&tgt, a, b));
        match c {
            Some(c) => components.push(c),
            None => {
                return Err(DslError::Declaration {
                    pos: d.name.pos,
                    message: format!(
                        "`{}` has no component at `{}`",
                        d.name.text,
                        src.object_name(x)
                    ),
                })
            }
        }
    }
    let t = NatTrans::new(f, g, components).map_err(|e| typing(d.name.pos, e.to_string()))?;
    let report = check_natural(&t);
    if !report.passed {
        return Err(DslError::Law {
            name: d.name.text.clone(),
            report,
        });
    }
    Ok(t)
}

/// Elaborates every item in order; later items may refer to earlier ones.
pub fn elaborate(doc: &Document, config: &SaturationConfig) -> DslResult<Elaborated> {
    let mut env = Elaborated::default();
    for item in &doc.items {
        let (name, taken) = match item {
            Item::Category(c) => (&c.name, env.category(&c.name.text).is_some()),
            Item::Functor(f) => (&f.name, env.functor(&f.name.text).is_some()),
            Item::Nat(t) => (&t.name, env.nat(&t.name.text).is_some()),
        };
        if taken {
            return Err(DslError::Declaration {
                pos: name.pos,
                message: format!("`{}` declared twice", name.text),
            });
        }
        match item {
            Item::Category(c) => {
                let cat = match &c.body {
                    CategoryBody::Table(t) => elaborate_table(&c.name.text, t)?,
                    CategoryBody::Presented(p) => saturate(p, config)?,
                };
                env.categories.push((c.name.text.clone(), Arc::new(cat)));
            }
            Item::Functor(f) => {
                let functor = elaborate_functor(&env, f)?;
                env.functors.push(NamedFunctor {
                    name: f.name.text.clone(),
                    kind: f.kind,
                    functor,
                });
            }
            Item::Nat(t) => {
                let nat = elaborate_nat(&env, t)?;
                env.nats.push((t.name.text.clone(), nat));
            }
        }
    }
    Ok(env)
}
