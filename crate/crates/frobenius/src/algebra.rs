//! Finite-dimensional algebras presented by a quiver with relations.
//!
//! A presentation is a quiver (vertices, arrows), a list of relations
//! (linear combinations of parallel paths of length ≥ 2), and a length
//! bound `N`. The algebra is the path algebra modulo the two-sided ideal
//! generated by the relations together with all paths of length > N; the
//! builder verifies that the truncation is harmless, i.e. that every path
//! of length N+1 already lies in the relation ideal.
//!
//! Path words are stored in traversal order: in the product `p·q` the path
//! `p` is traversed first, so `e_source(p)·p = p = p·e_target(p)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::Error;
use crate::linalg::{EchelonBuilder, Field, Matrix, Scalar, Subspace};

/// An arrow of a quiver. `degree` only matters for graded algebras and
/// defaults to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// One relation: a linear combination of parallel paths, each path a
/// sequence of arrow indices in traversal order.
#[derive(Debug, Clone)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

/// A quiver with relations and a truncation bound.
#[derive(Debug, Clone)]
pub struct QuiverPresentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub bound: usize,
    /// Set when any arrow carries a nonzero degree; the algebra is then
    /// graded by path degree.
    pub graded: bool,
}

impl QuiverPresentation {
    pub fn new(field: Field, vertices: Vec<String>, arrows: Vec<Arrow>, bound: usize) -> Self {
        let graded = arrows.iter().any(|a| a.degree != 0);
        QuiverPresentation { field, vertices, arrows, relations: Vec::new(), bound, graded }
    }

    /// Add a relation given as `(coefficient, arrow-name path)` terms with
    /// paths in traversal order.
    pub fn relate(&mut self, terms: &[(i64, &[&str])]) {
        let rel = Relation {
            terms: terms
                .iter()
                .map(|(c, path)| {
                    let word = path
                        .iter()
                        .map(|n| {
                            self.arrows
                                .iter()
                                .position(|a| a.name == *n)
                                .unwrap_or_else(|| panic!("unknown arrow {n}"))
                        })
                        .collect();
                    (self.field.from_i64(*c), word)
                })
                .collect(),
        };
        self.relations.push(rel);
    }

    fn path_endpoints(&self, word: &[usize]) -> Result<(usize, usize), Error> {
        let mut it = word.iter();
        let Some(&first) = it.next() else {
            return Err(Error::Presentation("empty path in relation".into()));
        };
        let src = self.arrows[first].source;
        let mut tgt = self.arrows[first].target;
        for &a in it {
            if self.arrows[a].source != tgt {
                return Err(Error::Presentation(format!(
                    "non-composable path through arrow {}",
                    self.arrows[a].name
                )));
            }
            tgt = self.arrows[a].target;
        }
        Ok((src, tgt))
    }

    fn word_degree(&self, word: &[usize]) -> i64 {
        word.iter().map(|&a| self.arrows[a].degree).sum()
    }

    fn validate(&self) -> Result<(), Error> {
        for a in &self.arrows {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::Presentation(format!("arrow {} off the vertex set", a.name)));
            }
        }
        for rel in &self.relations {
            let mut endpoints = None;
            let mut degree = None;
            for (c, word) in &rel.terms {
                if c.field() != self.field {
                    return Err(Error::MixedFields);
                }
                if word.len() < 2 {
                    return Err(Error::Presentation(
                        "relations must lie in the square of the arrow ideal".into(),
                    ));
                }
                if word.len() > self.bound {
                    return Err(Error::Presentation(format!(
                        "relation term of length {} exceeds bound {}",
                        word.len(),
                        self.bound
                    )));
                }
                let ep = self.path_endpoints(word)?;
                if *endpoints.get_or_insert(ep) != ep {
                    return Err(Error::Presentation(
                        "relation mixes non-parallel paths".into(),
                    ));
                }
                if self.graded {
                    let d = self.word_degree(word);
                    if *degree.get_or_insert(d) != d {
                        return Err(Error::Presentation(
                            "relation is not homogeneous for the arrow degrees".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A basis path of the quotient algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct PathWord {
    source: usize,
    word: Vec<usize>,
}

/// Sparse coefficient vector, sorted by basis index.
pub type SparseVec = Vec<(usize, Scalar)>;

fn to_dense(field: Field, dim: usize, v: &SparseVec) -> Vec<Scalar> {
    let mut out = vec![field.zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

#[derive(Debug, Clone)]
enum AlgebraKind {
    /// Product table, `d*d` sparse vectors in row-major basis-pair order.
    Table { products: Vec<SparseVec> },
    /// `Λ ⊗ Λ^op`; products are derived from the base algebra on demand.
    Enveloping { base: Box<Algebra> },
}

/// A finite-dimensional associative unital algebra over an exact field,
/// with a distinguished complete set of orthogonal idempotents, an optional
/// grading, and (for quiver-presented algebras) a marked radical and a
/// generating set with factorizations of every basis element.
#[derive(Debug, Clone)]
pub struct Algebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    kind: AlgebraKind,
    unit: Vec<Scalar>,
    /// Orthogonal idempotent vectors summing to the unit.
    idempotents: Vec<Vec<Scalar>>,
    degrees: Option<Vec<i64>>,
    /// Basis indices spanning the Jacobson radical, when known (arrow ideal
    /// for quiver algebras, inherited for enveloping algebras).
    radical: Option<Vec<usize>>,
    /// Generating elements (as coordinate vectors) with labels.
    generators: Vec<(String, Vec<Scalar>)>,
    /// Generators that generate the radical as a right ideal (arrows; for
    /// enveloping algebras both `a⊗1` and `1⊗a`).
    radical_generators: Vec<usize>,
    /// For each idempotent, a product of generators equal to it.
    idempotent_words: Vec<Vec<usize>>,
    /// For each basis element, a product of generators equal to it, as
    /// indices into `generators`, in algebra product order.
    factorizations: Option<Vec<Vec<usize>>>,
}

impl Algebra {
    /// Build the algebra of a quiver presentation. The basis is the set of
    /// paths of length ≤ N not leading modulo the relation ideal, ordered
    /// by length then lexicographically by arrow index.
    pub fn from_presentation(p: &QuiverPresentation) -> Result<Algebra, Error> {
        p.validate()?;
        let field = p.field;
        let n = p.bound;

        // All paths of length ≤ N+1; the extra layer feeds the nilpotency
        // check. Enumeration order is (length, lex), so indices < cut are
        // exactly the paths of length ≤ N.
        let mut paths: Vec<PathWord> = (0..p.vertices.len())
            .map(|v| PathWord { source: v, word: Vec::new() })
            .collect();
        let mut layer_start = 0;
        for _len in 1..=n + 1 {
            let layer_end = paths.len();
            for i in layer_start..layer_end {
                let tgt = path_target(&p.arrows, &paths[i]);
                for (ai, a) in p.arrows.iter().enumerate() {
                    if a.source == tgt {
                        let mut word = paths[i].word.clone();
                        word.push(ai);
                        paths.push(PathWord { source: paths[i].source, word });
                    }
                }
            }
            layer_start = layer_end;
        }
        let cut = paths.iter().position(|q| q.word.len() > n).unwrap_or(paths.len());
        let index: HashMap<PathWord, usize> =
            paths.iter().enumerate().map(|(i, q)| (q.clone(), i)).collect();

        // Two-sided ideal closure u·r·v inside the window of paths of
        // length ≤ W, with terms longer than W truncated to zero.
        let span_ideal = |w: usize, limit: usize| -> EchelonBuilder {
            let mut builder = EchelonBuilder::new(field, limit);
            for rel in &p.relations {
                let min_len = rel.terms.iter().map(|(_, t)| t.len()).min().unwrap();
                let (rsrc, rtgt) = p.path_endpoints(&rel.terms[0].1).unwrap();
                for u in paths.iter().filter(|u| {
                    u.word.len() + min_len <= w && path_target(&p.arrows, u) == rsrc
                }) {
                    for v in paths.iter().filter(|v| {
                        u.word.len() + min_len + v.word.len() <= w
                            && v.source == rtgt
                            && v.word.len() <= w
                    }) {
                        let mut row = vec![field.zero(); limit];
                        for (c, term) in &rel.terms {
                            if u.word.len() + term.len() + v.word.len() > w {
                                continue;
                            }
                            let mut word = u.word.clone();
                            word.extend_from_slice(term);
                            word.extend_from_slice(&v.word);
                            let pw = PathWord { source: u.source, word };
                            let idx = index[&pw];
                            row[idx] = row[idx].add(c);
                        }
                        builder.insert(row);
                    }
                }
            }
            builder
        };

        // Nilpotency: every path of length N+1 must lie in the relation
        // ideal inside the length-(N+1) window.
        let wide = span_ideal(n + 1, paths.len());
        for q in &paths[cut..] {
            let mut v = vec![field.zero(); paths.len()];
            v[index[q]] = field.one();
            if !wide.contains(&v) {
                return Err(Error::Presentation(format!(
                    "non-nilpotent presentation: path {} of length {} survives the ideal",
                    path_label(&p.arrows, &p.vertices, q),
                    n + 1
                )));
            }
        }

        let ideal = span_ideal(n, cut).into_subspace();
        let pivot_cols: Vec<usize> = (0..ideal.dim())
            .map(|r| {
                (0..cut)
                    .find(|&c| !ideal.basis().get(r, c).is_zero())
                    .expect("echelon rows are nonzero")
            })
            .collect();
        let mut is_pivot = vec![false; cut];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let basis_paths: Vec<usize> = (0..cut).filter(|&c| !is_pivot[c]).collect();
        let dim = basis_paths.len();
        let mut col_to_basis = vec![usize::MAX; cut];
        for (bi, &c) in basis_paths.iter().enumerate() {
            col_to_basis[c] = bi;
        }

        // Residue of a single path (column) in basis coordinates.
        let reduce_path = |col: usize| -> SparseVec {
            let mut v = vec![field.zero(); cut];
            v[col] = field.one();
            let r = ideal.reduce(&v);
            (0..cut)
                .filter(|&c| !r[c].is_zero())
                .map(|c| {
                    debug_assert!(col_to_basis[c] != usize::MAX);
                    (col_to_basis[c], r[c].clone())
                })
                .collect()
        };

        // Structure constants b_i·b_j = residue of the concatenated path.
        let mut products = vec![SparseVec::new(); dim * dim];
        for (i, &ci) in basis_paths.iter().enumerate() {
            let pi = &paths[ci];
            let ti = path_target(&p.arrows, pi);
            for (j, &cj) in basis_paths.iter().enumerate() {
                let pj = &paths[cj];
                if pj.source != ti || pi.word.len() + pj.word.len() > n {
                    continue;
                }
                let mut word = pi.word.clone();
                word.extend_from_slice(&pj.word);
                products[i * dim + j] = reduce_path(index[&PathWord { source: pi.source, word }]);
            }
        }

        let labels: Vec<String> = basis_paths
            .iter()
            .map(|&c| path_label(&p.arrows, &p.vertices, &paths[c]))
            .collect();
        let degrees = p.graded.then(|| {
            basis_paths.iter().map(|&c| p.word_degree(&paths[c].word)).collect::<Vec<i64>>()
        });
        let radical: Vec<usize> =
            (0..dim).filter(|&i| !paths[basis_paths[i]].word.is_zero_len()).collect();

        // Vertex paths are never reducible (relations have length ≥ 2), so
        // each idempotent is a basis vector.
        let mut idempotents = Vec::new();
        for v in 0..p.vertices.len() {
            let col = index[&PathWord { source: v, word: Vec::new() }];
            let bi = col_to_basis[col];
            assert!(bi != usize::MAX, "vertex path eliminated by relations");
            let mut e = vec![field.zero(); dim];
            e[bi] = field.one();
            idempotents.push(e);
        }
        let mut unit = vec![field.zero(); dim];
        for e in &idempotents {
            for (u, x) in unit.iter_mut().zip(e) {
                *u = u.add(x);
            }
        }

        // Generators: vertex idempotents then arrows, each a basis vector
        // (arrows survive because relations have length ≥ 2).
        let mut generators = Vec::new();
        let mut vertex_gen = vec![0usize; p.vertices.len()];
        for (v, e) in idempotents.iter().enumerate() {
            vertex_gen[v] = generators.len();
            generators.push((format!("e{v}"), e.clone()));
        }
        let mut arrow_gen = vec![0usize; p.arrows.len()];
        for (ai, a) in p.arrows.iter().enumerate() {
            let col = index[&PathWord { source: a.source, word: vec![ai] }];
            let bi = col_to_basis[col];
            assert!(bi != usize::MAX, "arrow eliminated by relations");
            let mut g = vec![field.zero(); dim];
            g[bi] = field.one();
            arrow_gen[ai] = generators.len();
            generators.push((a.name.clone(), g));
        }
        let factorizations = basis_paths
            .iter()
            .map(|&c| {
                let q = &paths[c];
                if q.word.is_empty() {
                    vec![vertex_gen[q.source]]
                } else {
                    q.word.iter().map(|&ai| arrow_gen[ai]).collect()
                }
            })
            .collect();

        let radical_generators = arrow_gen.clone();
        let idempotent_words = vertex_gen.iter().map(|&g| vec![g]).collect();
        Ok(Algebra {
            field,
            dim,
            labels,
            kind: AlgebraKind::Table { products },
            unit,
            idempotents,
            degrees,
            radical: Some(radical),
            generators,
            radical_generators,
            idempotent_words,
            factorizations: Some(factorizations),
        })
    }

    /// Build directly from a product table (row-major `d*d` dense product
    /// vectors). No radical or factorization data: module-theoretic
    /// operations that need a quiver presentation will refuse such input.
    pub fn from_structure_constants(
        field: Field,
        labels: Vec<String>,
        products: Vec<Vec<Scalar>>,
        unit: Vec<Scalar>,
        idempotents: Vec<Vec<Scalar>>,
    ) -> Result<Algebra, Error> {
        let dim = labels.len();
        if products.len() != dim * dim || products.iter().any(|v| v.len() != dim) {
            return Err(Error::Shape("structure constant table has wrong shape".into()));
        }
        let sparse = products
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect()
            })
            .collect();
        let generators = (0..dim)
            .map(|i| {
                let mut g = vec![field.zero(); dim];
                g[i] = field.one();
                (labels[i].clone(), g)
            })
            .collect();
        // Append the idempotents as extra generators so every idempotent
        // has a one-step generator word.
        let mut generators: Vec<(String, Vec<Scalar>)> = generators;
        let idempotent_words = idempotents
            .iter()
            .enumerate()
            .map(|(k, e)| {
                generators.push((format!("e{k}"), e.clone()));
                vec![generators.len() - 1]
            })
            .collect();
        let a = Algebra {
            field,
            dim,
            labels,
            kind: AlgebraKind::Table { products: sparse },
            unit,
            idempotents,
            degrees: None,
            radical: None,
            generators,
            radical_generators: Vec::new(),
            idempotent_words,
            factorizations: Some((0..dim).map(|i| vec![i]).collect()),
        };
        if !a.verify_associativity() || !a.verify_unit() {
            return Err(Error::Presentation("structure constants are not associative/unital".into()));
        }
        Ok(a)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<Scalar>] {
        &self.idempotents
    }

    pub fn degrees(&self) -> Option<&[i64]> {
        self.degrees.as_deref()
    }

    pub fn degree_of(&self, i: usize) -> i64 {
        self.degrees.as_ref().map_or(0, |d| d[i])
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.is_some()
    }

    pub fn generators(&self) -> &[(String, Vec<Scalar>)] {
        &self.generators
    }

    /// Factorization of basis element `i` as a product of generators
    /// (indices into [`Self::generators`]), in algebra product order.
    pub fn factorization(&self, i: usize) -> Result<&[usize], Error> {
        self.factorizations
            .as_ref()
            .map(|f| f[i].as_slice())
            .ok_or_else(|| Error::Unsupported("algebra has no generator factorizations".into()))
    }

    /// Generator indices whose right ideal closure is the radical.
    pub fn radical_generators(&self) -> &[usize] {
        &self.radical_generators
    }

    /// Generator word multiplying out to the `k`-th idempotent.
    pub fn idempotent_word(&self, k: usize) -> &[usize] {
        &self.idempotent_words[k]
    }

    /// Basis indices `b` with `e_k·b = b` (the basis of the right
    /// projective `e_kΛ` for path-like bases).
    pub fn left_support_of_idempotent(&self, k: usize) -> Vec<usize> {
        let e = &self.idempotents[k];
        (0..self.dim)
            .filter(|&i| {
                let mut ei = vec![self.field.zero(); self.dim];
                ei[i] = self.field.one();
                self.mul_vec(e, &ei) == ei
            })
            .collect()
    }

    /// The opposite algebra (products reversed). Only for table-backed
    /// algebras; the enveloping kind is self-opposite up to the flip and is
    /// not needed in opposite form.
    pub fn opposite(&self) -> Result<Algebra, Error> {
        let AlgebraKind::Table { .. } = &self.kind else {
            return Err(Error::Unsupported("opposite of an enveloping algebra".into()));
        };
        let mut products = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.mul_basis(j, i);
                products.push(
                    p.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k, c.clone()))
                        .collect::<SparseVec>(),
                );
            }
        }
        let factorizations = self
            .factorizations
            .as_ref()
            .map(|f| f.iter().map(|w| w.iter().rev().copied().collect()).collect());
        let idempotent_words =
            self.idempotent_words.iter().map(|w| w.iter().rev().copied().collect()).collect();
        Ok(Algebra {
            field: self.field,
            dim: self.dim,
            labels: self.labels.clone(),
            kind: AlgebraKind::Table { products },
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            degrees: self.degrees.clone(),
            radical: self.radical.clone(),
            generators: self.generators.clone(),
            radical_generators: self.radical_generators.clone(),
            idempotent_words,
            factorizations,
        })
    }

    /// Is this an enveloping algebra? If so, expose the base.
    pub fn enveloping_base(&self) -> Option<&Algebra> {
        match &self.kind {
            AlgebraKind::Enveloping { base } => Some(base),
            AlgebraKind::Table { .. } => None,
        }
    }

    /// Product of basis elements, as a dense coefficient vector.
    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        match &self.kind {
            AlgebraKind::Table { products } => to_dense(self.field, self.dim, &products[i * self.dim + j]),
            AlgebraKind::Enveloping { base } => {
                // (a⊗b)(a′⊗b′) = aa′ ⊗ b′b, basis index i = l·d + r.
                let d = base.dim();
                let (il, ir) = (i / d, i % d);
                let (jl, jr) = (j / d, j % d);
                let left = base.mul_basis(il, jl);
                let right = base.mul_basis(jr, ir);
                let mut out = vec![self.field.zero(); self.dim];
                for (li, lc) in left.iter().enumerate() {
                    if lc.is_zero() {
                        continue;
                    }
                    for (ri, rc) in right.iter().enumerate() {
                        if !rc.is_zero() {
                            out[li * d + ri] = lc.mul(rc);
                        }
                    }
                }
                out
            }
        }
    }

    /// Bilinear product of coefficient vectors.
    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let prod = self.mul_basis(i, j);
                let c = xi.mul(yj);
                for (o, p) in out.iter_mut().zip(&prod) {
                    if !p.is_zero() {
                        *o = o.add(&c.mul(p));
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x`: column `j` is `x·b_j`.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let mut ej = vec![self.field.zero(); self.dim];
            ej[j] = self.field.one();
            let col = self.mul_vec(x, &ej);
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, j, v);
            }
        }
        m
    }

    /// Matrix of right multiplication by `x`: column `j` is `b_j·x`.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let mut ej = vec![self.field.zero(); self.dim];
            ej[j] = self.field.one();
            let col = self.mul_vec(&ej, x);
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, j, v);
            }
        }
        m
    }

    /// Indices of basis elements spanning the radical.
    pub fn radical_indices(&self) -> Result<&[usize], Error> {
        self.radical
            .as_deref()
            .ok_or_else(|| Error::Unsupported("radical requires a quiver-presented algebra".into()))
    }

    /// The Jacobson radical as a subspace (arrow ideal of the presentation).
    pub fn radical_basis(&self) -> Result<Subspace, Error> {
        let idx = self.radical_indices()?;
        let mut m = Matrix::zeros(self.field, idx.len(), self.dim);
        for (r, &i) in idx.iter().enumerate() {
            m.set(r, i, self.field.one());
        }
        Ok(Subspace::from_span(m))
    }

    /// Basis of the center `{z : zb = bz for all b}`.
    pub fn center_basis(&self) -> Subspace {
        let mut stacked = Matrix::zeros(self.field, self.dim * self.dim, self.dim);
        for k in 0..self.dim {
            let mut ek = vec![self.field.zero(); self.dim];
            ek[k] = self.field.one();
            let l = self.left_mul_matrix(&ek);
            let r = self.right_mul_matrix(&ek);
            let diff = r.sub(&l).expect("same shape");
            for row in 0..self.dim {
                for col in 0..self.dim {
                    stacked.set(k * self.dim + row, col, diff.get(row, col).clone());
                }
            }
        }
        stacked.kernel_basis()
    }

    /// The enveloping algebra `Λ^e = Λ ⊗ Λ^op` with basis `b_i ⊗ b_j` at
    /// index `i·d + j` and product `(a⊗b)(a′⊗b′) = aa′ ⊗ b′b`.
    pub fn enveloping_algebra(&self) -> Algebra {
        let d = self.dim;
        let field = self.field;
        let dim = d * d;
        let labels = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| format!("{}⊗{}", self.labels[i], self.labels[j]))
            .collect();
        let kron = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![field.zero(); dim];
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if !yj.is_zero() {
                        out[i * d + j] = xi.mul(yj);
                    }
                }
            }
            out
        };
        let unit = kron(&self.unit, &self.unit);
        let idempotents: Vec<Vec<Scalar>> = self
            .idempotents
            .iter()
            .flat_map(|e| self.idempotents.iter().map(move |f| kron(e, f)))
            .collect();
        let degrees = self.degrees.as_ref().map(|deg| {
            (0..d).flat_map(|i| (0..d).map(move |j| deg[i] + deg[j])).collect()
        });
        let radical = self.radical.as_ref().map(|rad| {
            let is_rad: Vec<bool> = {
                let mut v = vec![false; d];
                for &i in rad {
                    v[i] = true;
                }
                v
            };
            (0..dim).filter(|&k| is_rad[k / d] || is_rad[k % d]).collect()
        });
        // Generators g⊗1 (outer-left) then 1⊗g (outer-right); a basis
        // element b_i⊗b_j factors as (b_i⊗1)·(1⊗b_j), with the right-hand
        // factorization reversed because of the opposite product.
        let mut generators: Vec<(String, Vec<Scalar>)> = Vec::new();
        for (name, g) in &self.generators {
            generators.push((format!("{name}⊗1"), kron(g, &self.unit)));
        }
        for (name, g) in &self.generators {
            generators.push((format!("1⊗{name}"), kron(&self.unit, g)));
        }
        let shift = self.generators.len();
        let radical_generators = self
            .radical_generators
            .iter()
            .copied()
            .chain(self.radical_generators.iter().map(|&g| g + shift))
            .collect();
        let idempotent_words = (0..self.idempotents.len())
            .flat_map(|i| (0..self.idempotents.len()).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut w = self.idempotent_words[i].clone();
                w.extend(self.idempotent_words[j].iter().rev().map(|&g| g + shift));
                w
            })
            .collect();
        let factorizations = self.factorizations.as_ref().map(|facs| {
            (0..dim)
                .map(|k| {
                    let (i, j) = (k / d, k % d);
                    let mut f: Vec<usize> = facs[i].clone();
                    f.extend(facs[j].iter().rev().map(|&g| g + shift));
                    f
                })
                .collect()
        });
        Algebra {
            field,
            dim,
            labels,
            kind: AlgebraKind::Enveloping { base: Box::new(self.clone()) },
            unit,
            idempotents,
            degrees,
            radical,
            generators,
            radical_generators,
            idempotent_words,
            factorizations,
        }
    }

    /// Check associativity on all basis triples. Exhaustive; intended for
    /// tests and small algebras.
    pub fn verify_associativity(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul_basis(i, j);
                for k in 0..self.dim {
                    let mut ek = vec![self.field.zero(); self.dim];
                    ek[k] = self.field.one();
                    let left = self.mul_vec(&ij, &ek);
                    let jk = self.mul_basis(j, k);
                    let mut ei = vec![self.field.zero(); self.dim];
                    ei[i] = self.field.one();
                    let right = self.mul_vec(&ei, &jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn verify_unit(&self) -> bool {
        for i in 0..self.dim {
            let mut ei = vec![self.field.zero(); self.dim];
            ei[i] = self.field.one();
            if self.mul_vec(&self.unit, &ei) != ei || self.mul_vec(&ei, &self.unit) != ei {
                return false;
            }
        }
        true
    }

    pub fn verify_idempotents(&self) -> bool {
        for (i, e) in self.idempotents.iter().enumerate() {
            for (j, f) in self.idempotents.iter().enumerate() {
                let prod = self.mul_vec(e, f);
                let expect = if i == j { e.clone() } else { vec![self.field.zero(); self.dim] };
                if prod != expect {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the k-linear dual of the regular module is projective.
    pub fn is_selfinjective(&self) -> Result<bool, Error> {
        let arc = std::sync::Arc::new(self.clone());
        let dual = crate::module::RightModule::dual_regular(&arc)?;
        crate::module::is_projective(&dual)
    }

    /// Format an element for humans.
    pub fn format_element(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.labels[i].clone()
                } else {
                    format!("{}·{}", c.display_balanced(), self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

trait IsZeroLen {
    fn is_zero_len(&self) -> bool;
}

impl IsZeroLen for Vec<usize> {
    fn is_zero_len(&self) -> bool {
        self.is_empty()
    }
}

fn path_target(arrows: &[Arrow], p: &PathWord) -> usize {
    p.word.last().map_or(p.source, |&a| arrows[a].target)
}

fn path_label(arrows: &[Arrow], vertices: &[String], p: &PathWord) -> String {
    if p.word.is_empty() {
        format!("e_{}", vertices[p.source])
    } else {
        p.word.iter().map(|&a| arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }
}

/// A linear map between algebras, columns = images of source basis
/// elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn identity(a: &Algebra) -> AlgebraMorphism {
        AlgebraMorphism { matrix: Matrix::identity(a.field(), a.dim()) }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(x)
    }

    pub fn compose(&self, inner: &AlgebraMorphism) -> Result<AlgebraMorphism, Error> {
        Ok(AlgebraMorphism { matrix: self.matrix.mul(&inner.matrix)? })
    }

    pub fn inverse(&self) -> Option<AlgebraMorphism> {
        self.matrix.inverse().map(|m| AlgebraMorphism { matrix: m })
    }

    pub fn power(&self, n: i64) -> Option<AlgebraMorphism> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut out = AlgebraMorphism {
            matrix: Matrix::identity(self.matrix.field(), self.matrix.rows()),
        };
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base).expect("square matrices");
        }
        Some(out)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.field(), self.matrix.rows())
    }

    /// True iff the map preserves unit, multiplication on all basis pairs,
    /// and degrees when both algebras are graded.
    pub fn check(&self, source: &Algebra, target: &Algebra) -> Result<bool, Error> {
        if self.matrix.rows() != target.dim() || self.matrix.cols() != source.dim() {
            return Err(Error::Shape("morphism matrix shape mismatch".into()));
        }
        if self.matrix.field() != source.field() || source.field() != target.field() {
            return Err(Error::MixedFields);
        }
        if self.apply(source.unit()) != target.unit() {
            return Ok(false);
        }
        for i in 0..source.dim() {
            let mut ei = vec![source.field().zero(); source.dim()];
            ei[i] = source.field().one();
            let fi = self.apply(&ei);
            for j in 0..source.dim() {
                let prod = source.mul_basis(i, j);
                let mut ej = vec![source.field().zero(); source.dim()];
                ej[j] = source.field().one();
                let fj = self.apply(&ej);
                if self.apply(&prod) != target.mul_vec(&fi, &fj) {
                    return Ok(false);
                }
            }
        }
        if let (Some(sd), Some(td)) = (source.degrees(), target.degrees()) {
            for j in 0..source.dim() {
                let col = self.matrix.column(j);
                for (i, c) in col.iter().enumerate() {
                    if !c.is_zero() && td[i] != sd[j] {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// True iff `check` passes and the matrix is invertible.
    pub fn is_automorphism(&self, a: &Algebra) -> Result<bool, Error> {
        Ok(self.check(a, a)? && self.matrix.inverse().is_some())
    }
}

impl fmt::Display for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "morphism {}x{}", self.matrix.rows(), self.matrix.cols())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers(p: u32) -> Algebra {
        let field = Field::Fp(p);
        let mut q = QuiverPresentation::new(
            field,
            vec!["0".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0, degree: 0 }],
            1,
        );
        q.relate(&[(1, &["x", "x"])]);
        // bound 1 keeps x² out of the window; use bound 2 so the relation
        // itself is admissible, and paths of length 2 die by the relation.
        q.bound = 2;
        Algebra::from_presentation(&q).unwrap()
    }

    fn nakayama(field: Field, m: usize, n: usize) -> Algebra {
        let vertices = (0..m).map(|v| v.to_string()).collect();
        let arrows = (0..m)
            .map(|v| Arrow { name: format!("a{v}"), source: v, target: (v + 1) % m, degree: 0 })
            .collect();
        let mut q = QuiverPresentation::new(field, vertices, arrows, n);
        // all paths of length n+1 vanish
        q.bound = n + 1;
        for v in 0..m {
            let word: Vec<String> = (0..=n).map(|k| format!("a{}", (v + k) % m)).collect();
            let refs: Vec<&str> = word.iter().map(String::as_str).collect();
            q.relate(&[(1, &refs)]);
        }
        Algebra::from_presentation(&q).unwrap()
    }

    #[test]
    fn dual_numbers_dimension_two() {
        let a = dual_numbers(3);
        assert_eq!(a.dim(), 2);
        assert!(a.verify_associativity() && a.verify_unit() && a.verify_idempotents());
        assert_eq!(a.radical_basis().unwrap().dim(), 1);
    }

    #[test]
    fn nakayama_dimension_closed_form() {
        for (m, n) in [(1, 2), (2, 1), (2, 2), (3, 3)] {
            let a = nakayama(Field::Fp(3), m, n);
            assert_eq!(a.dim(), m * (n + 1), "N_{m}^{n}");
            assert!(a.verify_associativity());
        }
    }

    #[test]
    fn semisimple_product_of_fields() {
        let q = QuiverPresentation::new(
            Field::Rational,
            vec!["0".into(), "1".into(), "2".into()],
            vec![],
            0,
        );
        let a = Algebra::from_presentation(&q).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.radical_basis().unwrap().dim(), 0);
        assert_eq!(a.center_basis().dim(), 3);
    }

    #[test]
    fn non_nilpotent_rejected() {
        let q = QuiverPresentation::new(
            Field::Fp(2),
            vec!["0".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0, degree: 0 }],
            1,
        );
        assert!(matches!(Algebra::from_presentation(&q), Err(Error::Presentation(_))));
    }

    #[test]
    fn nakayama_radical_dimension() {
        let a = nakayama(Field::Fp(5), 2, 2);
        assert_eq!(a.radical_basis().unwrap().dim(), 6 - 2);
    }

    #[test]
    fn enveloping_dimension_and_axioms() {
        let a = dual_numbers(3);
        let e = a.enveloping_algebra();
        assert_eq!(e.dim(), 4);
        assert!(e.verify_associativity() && e.verify_unit() && e.verify_idempotents());
        // factorizations really multiply out to the basis elements
        for i in 0..e.dim() {
            let mut acc = e.unit().to_vec();
            for &g in e.factorization(i).unwrap() {
                acc = e.mul_vec(&acc, &e.generators()[g].1);
            }
            let mut ei = vec![e.field().zero(); e.dim()];
            ei[i] = e.field().one();
            assert_eq!(acc, ei, "factorization of {}", e.label(i));
        }
    }

    #[test]
    fn center_of_matrix_algebra_is_scalars() {
        // 2×2 matrices over F_3, basis E11, E12, E21, E22.
        let f = Field::Fp(3);
        let d = 4;
        let idx = |r: usize, c: usize| r * 2 + c;
        let mut products = vec![vec![f.zero(); d]; d * d];
        for r in 0..2 {
            for c in 0..2 {
                for r2 in 0..2 {
                    for c2 in 0..2 {
                        if c == r2 {
                            products[idx(r, c) * d + idx(r2, c2)][idx(r, c2)] = f.one();
                        }
                    }
                }
            }
        }
        let mut unit = vec![f.zero(); d];
        unit[idx(0, 0)] = f.one();
        unit[idx(1, 1)] = f.one();
        let mut e0 = vec![f.zero(); d];
        e0[idx(0, 0)] = f.one();
        let mut e1 = vec![f.zero(); d];
        e1[idx(1, 1)] = f.one();
        let a = Algebra::from_structure_constants(
            f,
            vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()],
            products,
            unit,
            vec![e0, e1],
        )
        .unwrap();
        assert_eq!(a.center_basis().dim(), 1);
    }

    #[test]
    fn center_of_commutative_algebra_is_everything() {
        let a = nakayama(Field::Fp(3), 1, 2); // k[x]/(x³)
        assert_eq!(a.center_basis().dim(), a.dim());
    }

    #[test]
    fn morphism_checks_on_dual_numbers() {
        let a = dual_numbers(3);
        assert!(AlgebraMorphism::identity(&a).check(&a, &a).unwrap());
        // x ↦ −x is an automorphism
        let m = Matrix::from_i64(a.field(), 2, 2, &[1, 0, 0, -1]);
        let f = AlgebraMorphism { matrix: m };
        assert!(f.is_automorphism(&a).unwrap());
        // x ↦ 1 breaks multiplication
        let m = Matrix::from_i64(a.field(), 2, 2, &[1, 1, 0, 0]);
        let g = AlgebraMorphism { matrix: m };
        assert!(!g.check(&a, &a).unwrap());
    }

    #[test]
    fn relation_with_short_term_rejected() {
        let mut q = QuiverPresentation::new(
            Field::Fp(2),
            vec!["0".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0, degree: 0 }],
            2,
        );
        q.relate(&[(1, &["x"])]);
        assert!(matches!(Algebra::from_presentation(&q), Err(Error::Presentation(_))));
    }
}
