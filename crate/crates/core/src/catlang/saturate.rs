//! Finite completion of a presented category.
//!
//! Nodes stand for arrows and carry one edge per generator, `n --g--> g∘n`.
//! Every relation is traced from every node and the endpoints merged, with
//! coincidences propagated along edges, until the table is complete. The
//! surviving nodes are the arrows of the quotient of the free category.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{DslError, DslResult, PresentedBody, Word};
use crate::category::{Arrow, FinCategory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationConfig {
    pub max_arrows: usize,
    pub max_word_length: usize,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        SaturationConfig {
            max_arrows: 512,
            max_word_length: 8,
        }
    }
}

struct Node {
    source: usize,
    target: usize,
    /// Generators in application order.
    word: Vec<usize>,
    edges: Vec<Option<usize>>,
}

struct Enumeration<'a> {
    config: &'a SaturationConfig,
    gen_src: Vec<usize>,
    gen_tgt: Vec<usize>,
    nodes: Vec<Node>,
    parent: Vec<usize>,
    live: usize,
}

impl Enumeration<'_> {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn add(&mut self, source: usize, target: usize, word: Vec<usize>) -> DslResult<usize> {
        if word.len() > self.config.max_word_length {
            return Err(DslError::SaturationExceeded(format!(
                "words longer than {} are still distinct",
                self.config.max_word_length
            )));
        }
        if self.live >= self.config.max_arrows {
            return Err(DslError::SaturationExceeded(format!(
                "more than {} arrows",
                self.config.max_arrows
            )));
        }
        let id = self.nodes.len();
        self.nodes.push(Node {
            source,
            target,
            word,
            edges: vec![None; self.gen_src.len()],
        });
        self.parent.push(id);
        self.live += 1;
        Ok(id)
    }

    /// Follows generator `g` from `n`, creating the target if undefined.
    fn step(&mut self, n: usize, g: usize) -> DslResult<usize> {
        let n = self.find(n);
        if let Some(e) = self.nodes[n].edges[g] {
            return Ok(self.find(e));
        }
        let mut word = self.nodes[n].word.clone();
        word.push(g);
        let m = self.add(self.nodes[n].source, self.gen_tgt[g], word)?;
        self.nodes[n].edges[g] = Some(m);
        Ok(m)
    }

    fn trace(&mut self, mut n: usize, word: &[usize]) -> DslResult<usize> {
        for &g in word {
            n = self.step(n, g)?;
        }
        Ok(self.find(n))
    }

    fn peek(&mut self, mut n: usize, word: &[usize]) -> Option<usize> {
        for &g in word {
            n = self.find(n);
            n = self.nodes[n].edges[g]?;
        }
        Some(self.find(n))
    }

    fn merge(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop] = keep;
            self.live -= 1;
            let edges = std::mem::take(&mut self.nodes[drop].edges);
            for (g, e) in edges.into_iter().enumerate() {
                let Some(e) = e else { continue };
                match self.nodes[keep].edges[g] {
                    Some(k) => queue.push((k, e)),
                    None => self.nodes[keep].edges[g] = Some(e),
                }
            }
        }
    }
}

type TypedWord = (usize, usize, Vec<usize>);

fn typed_word(
    w: &Word,
    gens: &HashMap<&str, usize>,
    gen_src: &[usize],
    gen_tgt: &[usize],
) -> DslResult<Option<TypedWord>> {
    let Word::Path(names) = w else {
        return Ok(None);
    };
    let mut word = Vec::with_capacity(names.len());
    for n in names.iter().rev() {
        let g = *gens
            .get(n.text.as_str())
            .ok_or_else(|| DslError::Reference {
                pos: n.pos,
                kind: "generator".into(),
                name: n.text.clone(),
            })?;
        if let Some(&prev) = word.last() {
            if gen_tgt[prev] != gen_src[g] {
                return Err(DslError::Typing {
                    pos: n.pos,
                    message: format!("`{}` cannot follow the generator before it", n.text),
                });
            }
        }
        word.push(g);
    }
    Ok(Some((
        gen_src[word[0]],
        gen_tgt[*word.last().unwrap()],
        word,
    )))
}

/// Completes a presentation to a finite category, or fails once the
/// configured bounds are exceeded.
///
/// Arrows come out as identities (in object order) followed by the other
/// classes ordered by their shortlex-least word, labelled `h∘g∘f`.
pub fn saturate(p: &PresentedBody, config: &SaturationConfig) -> DslResult<FinCategory> {
    if config.max_arrows == 0 || config.max_word_length == 0 {
        return Err(DslError::SaturationExceeded(
            "bounds must be positive".into(),
        ));
    }
    let mut objs: HashMap<&str, usize> = HashMap::new();
    for (i, o) in p.objects.iter().enumerate() {
        if objs.insert(&o.text, i).is_some() {
            return Err(DslError::Declaration {
                pos: o.pos,
                message: format!("object `{}` declared twice", o.text),
            });
        }
    }
    let obj = |n: &super::Name| {
        objs.get(n.text.as_str())
            .copied()
            .ok_or_else(|| DslError::Reference {
                pos: n.pos,
                kind: "object".into(),
                name: n.text.clone(),
            })
    };
    let mut gens: HashMap<&str, usize> = HashMap::new();
    let (mut gen_src, mut gen_tgt) = (Vec::new(), Vec::new());
    for (i, g) in p.generators.iter().enumerate() {
        if gens.insert(&g.name.text, i).is_some() {
            return Err(DslError::Declaration {
                pos: g.name.pos,
                message: format!("generator `{}` declared twice", g.name.text),
            });
        }
        gen_src.push(obj(&g.source)?);
        gen_tgt.push(obj(&g.target)?);
    }

    // Relations as (source, lhs, rhs) in application order.
    let mut relations: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for r in &p.relations {
        let l = typed_word(&r.lhs, &gens, &gen_src, &gen_tgt)?;
        let rr = typed_word(&r.rhs, &gens, &gen_src, &gen_tgt)?;
        let pos = r.lhs.pos();
        let mismatch = |a: &TypedWord, b: &TypedWord| DslError::Typing {
            pos,
            message: format!(
                "sides have types {} -> {} and {} -> {}",
                p.objects[a.0].text, p.objects[a.1].text, p.objects[b.0].text, p.objects[b.1].text
            ),
        };
        let rel = match (l, rr) {
            (None, None) => {
                return Err(DslError::Typing {
                    pos,
                    message: "cannot infer the object of `id`".into(),
                })
            }
            (Some(a), None) | (None, Some(a)) => {
                if a.0 != a.1 {
                    return Err(DslError::Typing {
                        pos,
                        message: "only an endo-arrow can equal `id`".into(),
                    });
                }
                (a.0, a.2, Vec::new())
            }
            (Some(a), Some(b)) => {
                if (a.0, a.1) != (b.0, b.1) {
                    return Err(mismatch(&a, &b));
                }
                (a.0, a.2, b.2)
            }
        };
        relations.push(rel);
    }

    let mut en = Enumeration {
        config,
        gen_src: gen_src.clone(),
        gen_tgt: gen_tgt.clone(),
        nodes: Vec::new(),
        parent: Vec::new(),
        live: 0,
    };
    for x in 0..p.objects.len() {
        en.add(x, x, Vec::new())?;
    }

    loop {
        let mut i = 0;
        while i < en.nodes.len() {
            if en.find(i) != i {
                i += 1;
                continue;
            }
            let t = en.nodes[i].target;
            for g in 0..gen_src.len() {
                if gen_src[g] == t {
                    en.step(i, g)?;
                }
            }
            for (src, l, r) in &relations {
                if *src != t || en.find(i) != i {
                    continue;
                }
                let a = en.trace(i, l)?;
                let b = en.trace(i, r)?;
                en.merge(a, b);
            }
            i += 1;
        }
        // A second pass catches edges merged away after their node was visited.
        let mut stable = true;
        for i in 0..en.nodes.len() {
            if en.find(i) != i {
                continue;
            }
            let t = en.nodes[i].target;
            if (0..gen_src.len()).any(|g| gen_src[g] == t && en.nodes[i].edges[g].is_none()) {
                stable = false;
                break;
            }
            for (src, l, r) in &relations {
                if *src == t && en.peek(i, l) != en.peek(i, r) {
                    stable = false;
                }
            }
        }
        if stable {
            break;
        }
    }

    build(p, &mut en)
}

fn build(p: &PresentedBody, en: &mut Enumeration<'_>) -> DslResult<FinCategory> {
    let n_obj = p.objects.len();
    let live: Vec<usize> = (0..en.nodes.len()).filter(|&i| en.find(i) == i).collect();
    // Shortlex-least written word per node, by breadth-first relaxation.
    // Written order reverses application order, so extending by a generator
    // prepends it.
    let mut best: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut frontier: Vec<usize> = (0..n_obj).map(|x| en.find(x)).collect();
    for &f in &frontier {
        best.insert(f, Vec::new());
    }
    while !frontier.is_empty() {
        let mut cand: HashMap<usize, Vec<usize>> = HashMap::new();
        for &f in &frontier {
            let t = en.nodes[f].target;
            for g in 0..en.gen_src.len() {
                if en.gen_src[g] != t {
                    continue;
                }
                let h = en.peek(f, &[g]).expect("complete table");
                if best.contains_key(&h) {
                    continue;
                }
                let mut w = vec![g];
                w.extend(&best[&f]);
                let e = cand.entry(h).or_insert_with(|| w.clone());
                if w < *e {
                    *e = w;
                }
            }
        }
        frontier = cand.keys().copied().collect();
        best.extend(cand);
    }

    let ids: Vec<usize> = (0..n_obj).map(|x| en.find(x)).collect();
    let mut order: Vec<usize> = live.iter().copied().filter(|f| !ids.contains(f)).collect();
    order.sort_by(|a, b| {
        let (wa, wb) = (&best[a], &best[b]);
        (wa.len(), wa).cmp(&(wb.len(), wb))
    });
    let mut order_all = ids.clone();
    order_all.extend(order);
    let index: HashMap<usize, usize> = order_all.iter().enumerate().map(|(i, &f)| (f, i)).collect();

    let arrows: Vec<Arrow> = order_all
        .iter()
        .map(|&f| {
            let node = &en.nodes[f];
            let label = if best[&f].is_empty() {
                format!("id_{}", p.objects[node.source].text)
            } else {
                best[&f]
                    .iter()
                    .map(|&g| p.generators[g].name.text.as_str())
                    .collect::<Vec<_>>()
                    .join("∘")
            };
            Arrow::new(node.source, node.target, label)
        })
        .collect();
    let m = arrows.len();
    let mut comp = vec![None; m * m];
    for (gi, &g) in order_all.iter().enumerate() {
        let applied: Vec<usize> = best[&g].iter().rev().copied().collect();
        for (fi, &f) in order_all.iter().enumerate() {
            if en.nodes[f].target != en.nodes[g].source {
                continue;
            }
            let h = en.peek(f, &applied).expect("complete table");
            comp[gi * m + fi] = Some(index[&h]);
        }
    }
    let objects = p.objects.iter().map(|o| o.text.clone()).collect();
    let cat = FinCategory::from_parts(
        objects,
        arrows,
        (0..m).collect(),
        comp,
        (0..n_obj).collect(),
    )?;
    let report = cat.check_laws();
    if !report.passed {
        return Err(DslError::Core(crate::error::Error::Internal(format!(
            "saturated table fails its laws:\n{report}"
        ))));
    }
    Ok(cat)
}
