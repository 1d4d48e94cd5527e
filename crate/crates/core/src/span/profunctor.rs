use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{FinCategory, FinFunctor, Morphism};
use crate::error::{Error, Result};
use crate::fib::{is_discrete_fibration_span, DiscreteFibrationSpan};

/// P: A^op × B → finite sets. `left[α][b]` for α: a₁ → a₂ maps P(a₂,b) →
/// P(a₁,b); `right[a][β]` for β: b₁ → b₂ maps P(a,b₁) → P(a,b₂).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profunctor {
    pub a: Arc<FinCategory>,
    pub b: Arc<FinCategory>,
    pub sizes: Vec<Vec<usize>>,
    pub left: Vec<Vec<Vec<usize>>>,
    pub right: Vec<Vec<Vec<usize>>>,
}

impl Profunctor {
    pub fn new(
        a: Arc<FinCategory>,
        b: Arc<FinCategory>,
        sizes: Vec<Vec<usize>>,
        left: Vec<Vec<Vec<usize>>>,
        right: Vec<Vec<Vec<usize>>>,
    ) -> Result<Profunctor> {
        let p = Profunctor { a, b, sizes, left, right };
        p.validate()?;
        Ok(p)
    }

    /// hom_A(−, −).
    pub fn hom(a: Arc<FinCategory>) -> Profunctor {
        let n = a.num_objects();
        let pos = |x: usize, y: usize, m: usize| a.hom(x, y).iter().position(|&k| k == m).unwrap();
        let sizes = (0..n).map(|x| (0..n).map(|y| a.hom(x, y).len()).collect()).collect();
        let left = (0..a.num_morphisms())
            .map(|u| {
                let (x1, x2) = (a.src(u), a.tgt(u));
                (0..n).map(|y| a.hom(x2, y).iter().map(|&h| pos(x1, y, a.compose(h, u))).collect()).collect()
            })
            .collect();
        let right = (0..n)
            .map(|x| {
                (0..a.num_morphisms())
                    .map(|v| {
                        let (y1, y2) = (a.src(v), a.tgt(v));
                        a.hom(x, y1).iter().map(|&h| pos(x, y2, a.compose(v, h))).collect()
                    })
                    .collect()
            })
            .collect();
        Profunctor { a: a.clone(), b: a.clone(), sizes, left, right }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = (&self.a, &self.b);
        let bad = |m: String| Err(Error::InvalidFunctor(m));
        if self.sizes.len() != a.num_objects() || self.sizes.iter().any(|r| r.len() != b.num_objects()) {
            return bad("profunctor sizes do not match".into());
        }
        for u in 0..a.num_morphisms() {
            for y in 0..b.num_objects() {
                let t = &self.left[u][y];
                if t.len() != self.sizes[a.tgt(u)][y] || t.iter().any(|&z| z >= self.sizes[a.src(u)][y]) {
                    return bad(format!("left action of {} is mistyped", a.morphism_id(u)));
                }
            }
        }
        for x in 0..a.num_objects() {
            for v in 0..b.num_morphisms() {
                let t = &self.right[x][v];
                if t.len() != self.sizes[x][b.src(v)] || t.iter().any(|&z| z >= self.sizes[x][b.tgt(v)]) {
                    return bad(format!("right action of {} is mistyped", b.morphism_id(v)));
                }
            }
        }
        let is_id = |t: &[usize]| t.iter().enumerate().all(|(i, &z)| i == z);
        for x in 0..a.num_objects() {
            for y in 0..b.num_objects() {
                if !is_id(&self.left[a.id(x)][y]) || !is_id(&self.right[x][b.id(y)]) {
                    return bad("identities act non-trivially".into());
                }
            }
        }
        for f in 0..a.num_morphisms() {
            for g in a.out_morphisms(a.tgt(f)) {
                let gf = a.compose(g, f);
                for y in 0..b.num_objects() {
                    let ok = (0..self.sizes[a.tgt(g)][y])
                        .all(|z| self.left[f][y][self.left[g][y][z]] == self.left[gf][y][z]);
                    if !ok {
                        return bad(format!("left action fails at {}", a.morphism_id(gf)));
                    }
                }
            }
        }
        for f in 0..b.num_morphisms() {
            for g in b.out_morphisms(b.tgt(f)) {
                let gf = b.compose(g, f);
                for x in 0..a.num_objects() {
                    let ok = (0..self.sizes[x][b.src(f)])
                        .all(|z| self.right[x][g][self.right[x][f][z]] == self.right[x][gf][z]);
                    if !ok {
                        return bad(format!("right action fails at {}", b.morphism_id(gf)));
                    }
                }
            }
        }
        for u in 0..a.num_morphisms() {
            for v in 0..b.num_morphisms() {
                let (x1, x2, y1) = (a.src(u), a.tgt(u), b.src(v));
                let ok = (0..self.sizes[x2][y1]).all(|z| {
                    self.right[x1][v][self.left[u][y1][z]] == self.left[u][b.tgt(v)][self.right[x2][v][z]]
                });
                if !ok {
                    return bad(format!("actions of {} and {} do not commute", a.morphism_id(u), b.morphism_id(v)));
                }
            }
        }
        Ok(())
    }
}

/// E(a,b) = {e : de = a, ce = b}, numbered in object order.
pub fn dfib_to_profunctor(s: &DiscreteFibrationSpan) -> Profunctor {
    let (d, c) = (s.d(), s.c());
    let (e, a, b) = (&d.dom, d.cod.clone(), c.cod.clone());
    let mut cells = vec![vec![Vec::new(); b.num_objects()]; a.num_objects()];
    for x in 0..e.num_objects() {
        cells[d.ob(x)][c.ob(x)].push(x);
    }
    let pos = |x: usize| cells[d.ob(x)][c.ob(x)].iter().position(|&y| y == x).unwrap();
    let sizes = cells.iter().map(|r| r.iter().map(|v| v.len()).collect()).collect();
    let left = (0..a.num_morphisms())
        .map(|u| {
            (0..b.num_objects())
                .map(|y| cells[a.tgt(u)][y].iter().map(|&x| pos(e.src(s.left_lifts[&(x, u)]))).collect())
                .collect()
        })
        .collect();
    let right = (0..a.num_objects())
        .map(|x0| {
            (0..b.num_morphisms())
                .map(|v| cells[x0][b.src(v)].iter().map(|&x| pos(e.tgt(s.right_lifts[&(x, v)]))).collect())
                .collect()
        })
        .collect();
    Profunctor { a, b, sizes, left, right }
}

/// Objects (a, b, x) with x ∈ P(a,b); a morphism (a₁,b₁,x₁) → (a₂,b₂,x₂) is
/// (α, β) with P(α,b₂)(x₂) = P(a₁,β)(x₁).
pub fn profunctor_to_dfib(p: &Profunctor) -> Result<DiscreteFibrationSpan> {
    let (a, b) = (&p.a, &p.b);
    let points: Vec<(usize, usize, usize)> = (0..a.num_objects())
        .flat_map(|x| (0..b.num_objects()).flat_map(move |y| (0..p.sizes[x][y]).map(move |z| (x, y, z))))
        .collect();
    let index: HashMap<(usize, usize, usize), usize> = points.iter().enumerate().map(|(k, &q)| (q, k)).collect();
    let objects: Vec<String> = points
        .iter()
        .map(|&(x, y, z)| format!("({},{},{z})", a.object_id(x), b.object_id(y)))
        .collect();
    let mut morphisms = Vec::new();
    let mut parts = Vec::new();
    let mut identity = vec![0; points.len()];
    let mut lookup = HashMap::new();
    for (s, &(x1, y1, z1)) in points.iter().enumerate() {
        for u in a.out_morphisms(x1) {
            for v in b.out_morphisms(y1) {
                let (x2, y2) = (a.tgt(u), b.tgt(v));
                let moved = p.right[x1][v][z1];
                for z2 in 0..p.sizes[x2][y2] {
                    if p.left[u][y2][z2] != moved {
                        continue;
                    }
                    let t = index[&(x2, y2, z2)];
                    if s == t && a.is_identity(u) && b.is_identity(v) {
                        identity[s] = morphisms.len();
                    }
                    lookup.insert((s, t, u, v), morphisms.len());
                    morphisms.push(Morphism {
                        id: format!("({},{}):{}→{}", a.morphism_id(u), b.morphism_id(v), objects[s], objects[t]),
                        src: s,
                        tgt: t,
                    });
                    parts.push((u, v));
                }
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let e = Arc::new(FinCategory::from_parts(objects, morphisms, identity, |g, f| {
        let ((u1, v1), (u2, v2)) = (parts[f], parts[g]);
        lookup[&(ends[f].0, ends[g].1, a.compose(u2, u1), b.compose(v2, v1))]
    }));
    let d = FinFunctor::new(e.clone(), a.clone(), points.iter().map(|q| q.0).collect(), parts.iter().map(|q| q.0).collect())?;
    let c = FinFunctor::new(e, b.clone(), points.iter().map(|q| q.1).collect(), parts.iter().map(|q| q.1).collect())?;
    is_discrete_fibration_span(&d, &c)
        .ok_or_else(|| Error::InvalidFunctor("profunctor did not give a discrete fibration".into()))
}

/// Q(a, (b, c)) = P((a, b), c), a profunctor from A to B^op × C.
fn transpose_profunctor(p: &Profunctor, a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Result<Profunctor> {
    let ab = &p.a;
    let c = p.b.clone();
    if **ab != a.product(b) {
        return Err(Error::ShapeMismatch("left leg does not land in A×B".into()));
    }
    let bop_c = Arc::new(b.opposite().product(&c));
    let (nb, mb, nc, mc) = (b.num_objects(), b.num_morphisms(), c.num_objects(), c.num_morphisms());
    let sizes: Vec<Vec<usize>> =
        (0..a.num_objects()).map(|x| (0..nb * nc).map(|w| p.sizes[x * nb + w / nc][w % nc]).collect()).collect();
    let left = (0..a.num_morphisms())
        .map(|u| (0..nb * nc).map(|w| p.left[u * mb + b.id(w / nc)][w % nc].clone()).collect())
        .collect();
    // (β^op, γ) with β: b₂ → b₁ in B acts as P(β) after P(γ)
    let right = (0..a.num_objects())
        .map(|x| {
            (0..mb * mc)
                .map(|k| {
                    let (beta, gamma) = (k / mc, k % mc);
                    let b1 = b.tgt(beta);
                    let c2 = c.tgt(gamma);
                    let along_c = &p.right[x * nb + b1][gamma];
                    let along_b = &p.left[a.id(x) * mb + beta][c2];
                    along_c.iter().map(|&z| along_b[z]).collect()
                })
                .collect()
        })
        .collect();
    Profunctor::new(a.clone(), bop_c, sizes, left, right)
}

/// P((a, b), c) = Q(a, (b, c)) for Q from A to B^op × C.
fn untranspose_profunctor(q: &Profunctor, b: &Arc<FinCategory>, c: &Arc<FinCategory>) -> Result<Profunctor> {
    let a = q.a.clone();
    if *q.b != b.opposite().product(c) {
        return Err(Error::ShapeMismatch("right leg does not land in B^op×C".into()));
    }
    let ab = Arc::new(a.product(b));
    let (nb, mb, nc, mc) = (b.num_objects(), b.num_morphisms(), c.num_objects(), c.num_morphisms());
    let sizes: Vec<Vec<usize>> = (0..a.num_objects() * nb)
        .map(|w| (0..nc).map(|z| q.sizes[w / nb][(w % nb) * nc + z]).collect())
        .collect();
    // (α, β): (a₁,b₁) → (a₂,b₂) acts by β^op: b₂ → b₁ then α
    let left = (0..a.num_morphisms() * mb)
        .map(|k| {
            let (alpha, beta) = (k / mb, k % mb);
            let a2 = a.tgt(alpha);
            (0..nc)
                .map(|z| {
                    let along_b = &q.right[a2][beta * mc + c.id(z)];
                    let along_a = &q.left[alpha][b.src(beta) * nc + z];
                    along_b.iter().map(|&y| along_a[y]).collect()
                })
                .collect()
        })
        .collect();
    let right = (0..a.num_objects() * nb)
        .map(|w| {
            let (x, y) = (w / nb, w % nb);
            (0..mc).map(|g| q.right[x][b.id(y) * mc + g].clone()).collect()
        })
        .collect();
    Profunctor::new(ab, c.clone(), sizes, left, right)
}

/// A discrete fibration from A×B to C, as one from A to B^op × C.
pub fn dfib_transpose(
    s: &DiscreteFibrationSpan,
    a: &Arc<FinCategory>,
    b: &Arc<FinCategory>,
) -> Result<DiscreteFibrationSpan> {
    profunctor_to_dfib(&transpose_profunctor(&dfib_to_profunctor(s), a, b)?)
}

/// A discrete fibration from A to B^op × C, as one from A×B to C.
pub fn dfib_untranspose(
    s: &DiscreteFibrationSpan,
    b: &Arc<FinCategory>,
    c: &Arc<FinCategory>,
) -> Result<DiscreteFibrationSpan> {
    profunctor_to_dfib(&untranspose_profunctor(&dfib_to_profunctor(s), b, c)?)
}
