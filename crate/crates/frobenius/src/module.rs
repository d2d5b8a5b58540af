//! Right modules and bimodules over a finite-dimensional algebra.
//!
//! A module stores its dimension and the action matrices of the algebra
//! *generators* only; the action of an arbitrary basis element is the
//! product of generator actions along its stored factorization. This keeps
//! bimodules over the enveloping algebra (dimension d²) affordable.
//!
//! Bimodules are right modules over `Λ^e = Λ ⊗ Λ^op` with the dictionary
//! `x·(a⊗b) = b·x·a`; the generator `a⊗1` acts as right multiplication by
//! `a` and `1⊗a` as left multiplication.
//!
//! Hom spaces between presented modules are computed from a projective
//! presentation: a map out of `M = P₀/(relations)` is a choice of images
//! of the cover generators annihilated by the relations. This is linear
//! algebra in the number of generators, not in `dim M · dim N`.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::error::Error;
use crate::linalg::{EchelonBuilder, Field, Matrix, Scalar, Subspace};

fn basis_vector(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}

/// Solve `Σ_k c_k·targets_k = rhs` for scalars `c_k`; all matrices same
/// shape. Deterministic (free coefficients zero); `None` if inconsistent.
pub fn solve_linear_combination(targets: &[Matrix], rhs: &Matrix) -> Option<Vec<Scalar>> {
    let field = rhs.field();
    let h = targets.len();
    let mut builder = EchelonBuilder::new(field, h + 1);
    for r in 0..rhs.rows() {
        for c in 0..rhs.cols() {
            let mut row: Vec<Scalar> = targets.iter().map(|t| t.get(r, c).clone()).collect();
            row.push(rhs.get(r, c).clone());
            builder.insert(row);
        }
    }
    let reduced = builder.into_subspace();
    let a = {
        let mut m = Matrix::zeros(field, reduced.dim(), h);
        for r in 0..reduced.dim() {
            for c in 0..h {
                m.set(r, c, reduced.basis().get(r, c).clone());
            }
        }
        m
    };
    let b = {
        let mut m = Matrix::zeros(field, reduced.dim(), 1);
        for r in 0..reduced.dim() {
            m.set(r, 0, reduced.basis().get(r, h).neg());
        }
        m
    };
    // Reduced rows encode a·c + b_col·t = 0 homogeneously; solving the
    // original system means setting the rhs coordinate to −1.
    a.solve(&b.scale(&field.from_i64(-1)))
        .expect("shapes agree")
        .map(|x| x.column(0))
}

/// A finitely generated right module, with actions given on the algebra's
/// generators. Convention: column vectors, `x·g = ρ(g)·x`, so
/// `ρ(gh) = ρ(h)ρ(g)`.
#[derive(Debug, Clone)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dim: usize,
    gen_actions: Vec<Matrix>,
}

impl RightModule {
    pub fn new(algebra: Arc<Algebra>, dim: usize, gen_actions: Vec<Matrix>) -> RightModule {
        assert_eq!(gen_actions.len(), algebra.generators().len());
        RightModule { algebra, dim, gen_actions }
    }

    pub fn zero(algebra: Arc<Algebra>) -> RightModule {
        let gens = algebra.generators().len();
        let field = algebra.field();
        RightModule { algebra, dim: 0, gen_actions: vec![Matrix::zeros(field, 0, 0); gens] }
    }

    /// The regular representation `Λ_Λ`.
    pub fn regular(algebra: &Arc<Algebra>) -> RightModule {
        let gen_actions =
            algebra.generators().iter().map(|(_, g)| algebra.right_mul_matrix(g)).collect();
        RightModule { algebra: algebra.clone(), dim: algebra.dim(), gen_actions }
    }

    /// The k-linear dual of the regular module, `D(Λ)`, with
    /// `(f·a)(x) = f(ax)`.
    pub fn dual_regular(algebra: &Arc<Algebra>) -> Result<RightModule, Error> {
        let gen_actions = algebra
            .generators()
            .iter()
            .map(|(_, g)| algebra.left_mul_matrix(g).transpose())
            .collect();
        Ok(RightModule { algebra: algebra.clone(), dim: algebra.dim(), gen_actions })
    }

    /// The indecomposable projective `e_cΛ` as an explicit module on the
    /// basis elements supported at the idempotent. Also returns those
    /// algebra basis indices.
    pub fn projective(algebra: &Arc<Algebra>, c: usize) -> (RightModule, Vec<usize>) {
        let support = algebra.left_support_of_idempotent(c);
        let field = algebra.field();
        let dim = support.len();
        let pos: HashMap<usize, usize> =
            support.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let gen_actions = algebra
            .generators()
            .iter()
            .map(|(_, g)| {
                let mut m = Matrix::zeros(field, dim, dim);
                for (j, &b) in support.iter().enumerate() {
                    let prod = algebra.mul_vec(&basis_vector(field, algebra.dim(), b), g);
                    for (i, v) in prod.iter().enumerate() {
                        if !v.is_zero() {
                            let r = *pos.get(&i).expect("e·b·g stays in e·Λ");
                            m.set(r, j, v.clone());
                        }
                    }
                }
                m
            })
            .collect();
        (RightModule { algebra: algebra.clone(), dim, gen_actions }, support)
    }

    pub fn direct_sum(parts: &[&RightModule]) -> RightModule {
        let algebra = parts[0].algebra.clone();
        let field = algebra.field();
        let dim = parts.iter().map(|m| m.dim).sum();
        let gen_actions = (0..algebra.generators().len())
            .map(|g| {
                let mut m = Matrix::zeros(field, dim, dim);
                let mut off = 0;
                for part in parts {
                    for r in 0..part.dim {
                        for c in 0..part.dim {
                            m.set(off + r, off + c, part.gen_actions[g].get(r, c).clone());
                        }
                    }
                    off += part.dim;
                }
                m
            })
            .collect();
        RightModule { algebra, dim, gen_actions }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn gen_action(&self, g: usize) -> &Matrix {
        &self.gen_actions[g]
    }

    /// Apply a word of generators: `x·(g₁g₂…g_k)` applied left to right.
    pub fn act_word(&self, x: &[Scalar], word: &[usize]) -> Vec<Scalar> {
        let mut v = x.to_vec();
        for &g in word {
            v = self.gen_actions[g].apply(&v);
        }
        v
    }

    /// `x·b` for a single algebra basis element.
    pub fn act_basis(&self, x: &[Scalar], b: usize) -> Vec<Scalar> {
        let word = self.algebra.factorization(b).expect("factorizations required").to_vec();
        self.act_word(x, &word)
    }

    /// `x·b` for every basis index in `indices`, sharing work across common
    /// factorization prefixes (paths extend each other, so this is near
    /// one matrix-vector product per result).
    pub fn act_basis_batch(&self, x: &[Scalar], indices: &[usize]) -> Vec<Vec<Scalar>> {
        let mut memo: HashMap<Vec<usize>, Vec<Scalar>> = HashMap::new();
        memo.insert(Vec::new(), x.to_vec());
        indices
            .iter()
            .map(|&b| {
                let word = self.algebra.factorization(b).expect("factorizations required");
                self.act_memo(word, &mut memo).clone()
            })
            .collect()
    }

    fn act_memo<'a>(
        &self,
        word: &[usize],
        memo: &'a mut HashMap<Vec<usize>, Vec<Scalar>>,
    ) -> &'a Vec<Scalar> {
        if !memo.contains_key(word) {
            let (prefix, last) = word.split_at(word.len() - 1);
            let prev = self.act_memo(prefix, memo).clone();
            let v = self.gen_actions[last[0]].apply(&prev);
            memo.insert(word.to_vec(), v);
        }
        &memo[word]
    }

    /// `x·a` for an arbitrary algebra element `a`.
    pub fn act_element(&self, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let support: Vec<usize> =
            a.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
        let images = self.act_basis_batch(x, &support);
        let mut out = vec![self.field().zero(); self.dim];
        for (&b, img) in support.iter().zip(&images) {
            for (o, v) in out.iter_mut().zip(img) {
                if !v.is_zero() {
                    *o = o.add(&a[b].mul(v));
                }
            }
        }
        out
    }

    /// Action matrix of the idempotent `e_c`.
    pub fn idempotent_action(&self, c: usize) -> Matrix {
        let word = self.algebra.idempotent_word(c).to_vec();
        let mut m = Matrix::identity(self.field(), self.dim);
        for &g in &word {
            m = self.gen_actions[g].mul(&m).expect("square");
        }
        m
    }

    /// The subspace `M·rad`: the submodule generated by the images of the
    /// radical generators.
    pub fn radical_subspace(&self) -> Result<Subspace, Error> {
        self.algebra.radical_indices()?; // ensure the radical is known
        let mut builder = EchelonBuilder::new(self.field(), self.dim);
        let mut worklist: Vec<Vec<Scalar>> = Vec::new();
        for &g in self.algebra.radical_generators() {
            for j in 0..self.dim {
                let col = self.gen_actions[g].column(j);
                if builder.insert(col.clone()) {
                    worklist.push(col);
                }
            }
        }
        while let Some(v) = worklist.pop() {
            for g in 0..self.gen_actions.len() {
                let w = self.gen_actions[g].apply(&v);
                if builder.insert(w.clone()) {
                    worklist.push(w);
                }
            }
        }
        Ok(builder.into_subspace())
    }

    /// Exhaustively verify that generator actions assemble to a
    /// representation: `ρ(b_i b_j) = ρ(b_j)ρ(b_i)` on all basis pairs, and
    /// `ρ(1) = id`. Quadratic in the algebra dimension; for tests.
    pub fn verify(&self) -> bool {
        let a = &self.algebra;
        let field = self.field();
        let action_of = |x: &[Scalar]| -> Matrix {
            let cols: Vec<Vec<Scalar>> = (0..self.dim)
                .map(|j| self.act_element(&basis_vector(field, self.dim, j), x))
                .collect();
            from_columns(field, self.dim, &cols)
        };
        if action_of(a.unit()) != Matrix::identity(field, self.dim) {
            return false;
        }
        for i in 0..a.dim() {
            let bi = basis_vector(field, a.dim(), i);
            let mi = action_of(&bi);
            for j in 0..a.dim() {
                let bj = basis_vector(field, a.dim(), j);
                let mj = action_of(&bj);
                let prod = action_of(&a.mul_basis(i, j));
                if prod != mj.mul(&mi).expect("square") {
                    return false;
                }
            }
        }
        true
    }

    /// Submodule on an invariant subspace; returns the module together
    /// with the inclusion map.
    pub fn submodule(&self, space: &Subspace) -> (RightModule, ModuleMap) {
        let field = self.field();
        let k = space.dim();
        let incl = space.basis().transpose();
        let gen_actions = self
            .gen_actions
            .iter()
            .map(|rho| {
                let mut m = Matrix::zeros(field, k, k);
                for j in 0..k {
                    let img = rho.apply(space.basis_row(j));
                    let coords = space
                        .coordinates(&img)
                        .expect("subspace is not invariant under the action");
                    for (i, v) in coords.into_iter().enumerate() {
                        m.set(i, j, v);
                    }
                }
                m
            })
            .collect();
        let module = RightModule { algebra: self.algebra.clone(), dim: k, gen_actions };
        (module, ModuleMap { matrix: incl })
    }

    /// Quotient by an invariant subspace; returns the module and the
    /// projection. Quotient coordinates are the non-pivot coordinates of
    /// the subspace's echelon basis.
    pub fn quotient(&self, space: &Subspace) -> (RightModule, ModuleMap) {
        let field = self.field();
        let pivots: Vec<usize> = (0..space.dim())
            .map(|r| {
                (0..self.dim).find(|&c| !space.basis().get(r, c).is_zero()).expect("nonzero row")
            })
            .collect();
        let mut is_pivot = vec![false; self.dim];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.dim).filter(|&c| !is_pivot[c]).collect();
        let k = free.len();
        // projection: reduce then read free coordinates
        let mut proj = Matrix::zeros(field, k, self.dim);
        for j in 0..self.dim {
            let red = space.reduce(&basis_vector(field, self.dim, j));
            for (i, &f) in free.iter().enumerate() {
                proj.set(i, j, red[f].clone());
            }
        }
        // section: free coordinate i ↦ ambient basis vector free[i]
        let mut sect = Matrix::zeros(field, self.dim, k);
        for (i, &f) in free.iter().enumerate() {
            sect.set(f, i, field.one());
        }
        let gen_actions = self
            .gen_actions
            .iter()
            .map(|rho| proj.mul(rho).expect("shape").mul(&sect).expect("shape"))
            .collect();
        let module = RightModule { algebra: self.algebra.clone(), dim: k, gen_actions };
        (module, ModuleMap { matrix: proj })
    }
}

/// A linear map between modules over the same algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn zero(field: Field, target: usize, source: usize) -> ModuleMap {
        ModuleMap { matrix: Matrix::zeros(field, target, source) }
    }

    pub fn identity(m: &RightModule) -> ModuleMap {
        ModuleMap { matrix: Matrix::identity(m.field(), m.dim()) }
    }

    pub fn compose(&self, inner: &ModuleMap) -> ModuleMap {
        ModuleMap { matrix: self.matrix.mul(&inner.matrix).expect("composable") }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { matrix: self.matrix.add(&other.matrix).expect("same shape") }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap { matrix: self.matrix.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Verify the intertwining property on every generator.
    pub fn check(&self, source: &RightModule, target: &RightModule) -> bool {
        if self.matrix.cols() != source.dim() || self.matrix.rows() != target.dim() {
            return false;
        }
        for g in 0..source.gen_actions.len() {
            let lhs = self.matrix.mul(source.gen_action(g)).expect("shape");
            let rhs = target.gen_action(g).mul(&self.matrix).expect("shape");
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

/// Kernel of a module map as a module with its inclusion into the source.
pub fn kernel_module(map: &ModuleMap, source: &RightModule) -> (RightModule, ModuleMap) {
    let space = map.matrix.kernel_basis();
    source.submodule(&space)
}

/// A projective cover `π: P₀ = ⊕ e_{c_i}Λ ↠ M`.
#[derive(Debug, Clone)]
pub struct Cover {
    /// idempotent index of each summand
    pub summand_idems: Vec<usize>,
    /// chosen generator image `x_i ∈ M·e_{c_i}` of each summand
    pub gen_images: Vec<Vec<Scalar>>,
    /// algebra basis indices forming the basis of each summand `e_{c_i}Λ`
    pub summand_bases: Vec<Vec<usize>>,
    /// start offset of each summand inside `P₀`
    pub offsets: Vec<usize>,
    pub p0: RightModule,
    pub pi: ModuleMap,
}

/// Projective cover of a nonzero module. The cover is minimal: the kernel
/// lies inside `rad·P₀`.
pub fn projective_cover(m: &RightModule) -> Result<Cover, Error> {
    if m.dim() == 0 {
        return Err(Error::Unsupported("projective cover of the zero module".into()));
    }
    cover_allow_zero(m)
}

fn cover_allow_zero(m: &RightModule) -> Result<Cover, Error> {
    let algebra = m.algebra().clone();
    let field = m.field();
    let rad = m.radical_subspace()?;
    // Greedy lift of a basis of top(M) = M/M·rad, idempotent by idempotent.
    let mut builder = EchelonBuilder::new(field, m.dim());
    for r in 0..rad.dim() {
        builder.insert(rad.basis_row(r).to_vec());
    }
    let mut summand_idems = Vec::new();
    let mut gen_images = Vec::new();
    for c in 0..algebra.idempotents().len() {
        let act = m.idempotent_action(c);
        for j in 0..m.dim() {
            let col = act.column(j);
            if builder.insert(col.clone()) {
                summand_idems.push(c);
                gen_images.push(col);
            }
        }
    }
    // Assemble P₀ and π.
    let mut parts = Vec::new();
    let mut summand_bases = Vec::new();
    let mut offsets = Vec::new();
    let mut off = 0;
    let mut pi_cols: Vec<Vec<Scalar>> = Vec::new();
    for (c, x) in summand_idems.iter().zip(&gen_images) {
        let (p, support) = RightModule::projective(&algebra, *c);
        offsets.push(off);
        off += p.dim();
        pi_cols.extend(m.act_basis_batch(x, &support));
        summand_bases.push(support);
        parts.push(p);
    }
    let p0 = if parts.is_empty() {
        RightModule::zero(algebra.clone())
    } else {
        RightModule::direct_sum(&parts.iter().collect::<Vec<_>>())
    };
    let pi = ModuleMap { matrix: from_columns(field, m.dim(), &pi_cols) };
    Ok(Cover { summand_idems, gen_images, summand_bases, offsets, p0, pi })
}

/// A projective presentation of `M`: the cover `P₀ ↠ M` together with a
/// generating set of relations (elements of `P₀` spanning `ker π` as a
/// module, stored blockwise in summand coordinates) and a linear section
/// of π.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub cover: Cover,
    /// relations\[j\]\[i\] = component of relation j in summand i, in the
    /// coordinates of that summand's basis
    pub relations: Vec<Vec<Vec<Scalar>>>,
    pub section: Matrix,
}

pub fn presentation_of(m: &RightModule) -> Result<Presentation, Error> {
    let cover = cover_allow_zero(m)?;
    let field = m.field();
    let (ker, incl) = kernel_module(&cover.pi, &cover.p0);
    // Module generators of the kernel: lifts of a basis of top(ker).
    let relations_in_p0: Vec<Vec<Scalar>> = if ker.dim() == 0 {
        Vec::new()
    } else {
        let rad = ker.radical_subspace()?;
        let mut builder = EchelonBuilder::new(field, ker.dim());
        for r in 0..rad.dim() {
            builder.insert(rad.basis_row(r).to_vec());
        }
        let mut gens = Vec::new();
        for j in 0..ker.dim() {
            let col = basis_vector(field, ker.dim(), j);
            if builder.insert(col.clone()) {
                gens.push(incl.matrix.apply(&col));
            }
        }
        gens
    };
    let relations = relations_in_p0
        .iter()
        .map(|r| {
            cover
                .offsets
                .iter()
                .zip(&cover.summand_bases)
                .map(|(&off, basis)| r[off..off + basis.len()].to_vec())
                .collect()
        })
        .collect();
    let section = cover
        .pi
        .matrix
        .solve(&Matrix::identity(field, m.dim()))
        .expect("shape")
        .ok_or_else(|| Error::Shape("cover is not surjective".into()))?;
    Ok(Presentation { cover, relations, section })
}

/// Basis of `Hom(M, N)` computed through a presentation of `M`: a map is a
/// tuple `(u_i ∈ N·e_{c_i})` annihilated by every relation.
pub fn hom_space_presented(
    pres: &Presentation,
    m: &RightModule,
    n: &RightModule,
) -> Vec<ModuleMap> {
    let field = n.field();
    // Unknown coordinates: for each summand, a basis of N·e_c.
    let mut unknown_vectors: Vec<(usize, Vec<Scalar>)> = Vec::new(); // (summand, vector in N)
    for (i, &c) in pres.cover.summand_idems.iter().enumerate() {
        let act = n.idempotent_action(c);
        let mut b = EchelonBuilder::new(field, n.dim());
        for j in 0..n.dim() {
            let col = act.column(j);
            if b.insert(col.clone()) {
                unknown_vectors.push((i, col));
            }
        }
    }
    let h = unknown_vectors.len();
    if h == 0 {
        return Vec::new();
    }
    // For each unknown vector v in summand i, precompute v·b over the
    // summand basis; then each relation contributes dim N constraint rows.
    let images: Vec<Vec<Vec<Scalar>>> = unknown_vectors
        .iter()
        .map(|(i, v)| n.act_basis_batch(v, &pres.cover.summand_bases[*i]))
        .collect();
    let mut builder = EchelonBuilder::new(field, h);
    'rels: for rel in &pres.relations {
        // column k of the constraint block: Σ_b rel[i_k][b]·(v_k·b)
        let mut block: Vec<Vec<Scalar>> = Vec::with_capacity(h);
        for ((i, _), imgs) in unknown_vectors.iter().zip(&images) {
            let comp = &rel[*i];
            let mut acc = vec![field.zero(); n.dim()];
            for (coef, img) in comp.iter().zip(imgs) {
                if coef.is_zero() {
                    continue;
                }
                for (a, x) in acc.iter_mut().zip(img) {
                    if !x.is_zero() {
                        *a = a.add(&coef.mul(x));
                    }
                }
            }
            block.push(acc);
        }
        for t in 0..n.dim() {
            let row: Vec<Scalar> = block.iter().map(|col| col[t].clone()).collect();
            builder.insert(row);
            if builder.dim() == h {
                break 'rels; // only the zero map survives
            }
        }
    }
    let constraint = builder.into_subspace();
    let mut cm = Matrix::zeros(field, constraint.dim(), h);
    for r in 0..constraint.dim() {
        for c in 0..h {
            cm.set(r, c, constraint.basis().get(r, c).clone());
        }
    }
    let kernel = cm.kernel_basis();
    // Each kernel vector gives u_i; assemble the matrix Φ: P₀ → N and
    // compose with the section.
    let mut out = Vec::new();
    for s in 0..kernel.dim() {
        let coords = kernel.basis_row(s);
        // u_i = Σ over unknowns in summand i
        let p0dim = pres.cover.p0.dim();
        let mut phi_cols: Vec<Vec<Scalar>> = vec![vec![field.zero(); n.dim()]; p0dim];
        for (k, ((i, _), imgs)) in unknown_vectors.iter().zip(&images).enumerate() {
            if coords[k].is_zero() {
                continue;
            }
            let off = pres.cover.offsets[*i];
            for (b_pos, img) in imgs.iter().enumerate() {
                for (t, x) in img.iter().enumerate() {
                    if !x.is_zero() {
                        phi_cols[off + b_pos][t] =
                            phi_cols[off + b_pos][t].add(&coords[k].mul(x));
                    }
                }
            }
        }
        let phi = from_columns(field, n.dim(), &phi_cols);
        let matrix = phi.mul(&pres.section).expect("shape");
        out.push(ModuleMap { matrix });
    }
    let _ = m;
    out
}

/// Basis of `Hom(M, N)` by directly solving the intertwining equations.
/// Cost grows with `(dim M · dim N)²`; use for small modules and as an
/// independent oracle for the presented computation.
pub fn hom_space_naive(m: &RightModule, n: &RightModule) -> Vec<ModuleMap> {
    let field = m.field();
    let (md, nd) = (m.dim(), n.dim());
    let vars = md * nd; // F[t, s] at index t·md + s — row-major on (target, source)
    let mut builder = EchelonBuilder::new(field, vars);
    for g in 0..m.gen_actions.len() {
        let a = m.gen_action(g);
        let b = n.gen_action(g);
        // constraint: F·a − b·F = 0, row for each (t, s)
        for t in 0..nd {
            for s in 0..md {
                let mut row = vec![field.zero(); vars];
                for k in 0..md {
                    // (F a)[t,s] = Σ_k F[t,k] a[k,s]
                    let v = a.get(k, s);
                    if !v.is_zero() {
                        row[t * md + k] = row[t * md + k].add(v);
                    }
                }
                for k in 0..nd {
                    // (b F)[t,s] = Σ_k b[t,k] F[k,s]
                    let v = b.get(t, k);
                    if !v.is_zero() {
                        row[k * md + s] = row[k * md + s].sub(v);
                    }
                }
                builder.insert(row);
            }
        }
    }
    let constraint = builder.into_subspace();
    let mut cm = Matrix::zeros(field, constraint.dim(), vars);
    for r in 0..constraint.dim() {
        for c in 0..vars {
            cm.set(r, c, constraint.basis().get(r, c).clone());
        }
    }
    cm.kernel_basis()
        .basis()
        .clone()
        .into_row_matrices(nd, md)
        .into_iter()
        .map(|matrix| ModuleMap { matrix })
        .collect()
}

/// Deterministic entry point: presented when the algebra supports covers
/// and the sizes warrant it, naive otherwise.
pub fn hom_space(m: &RightModule, n: &RightModule) -> Result<Vec<ModuleMap>, Error> {
    if m.dim() * n.dim() <= 1024 || m.algebra().radical_indices().is_err() {
        Ok(hom_space_naive(m, n))
    } else {
        let pres = presentation_of(m)?;
        Ok(hom_space_presented(&pres, m, n))
    }
}

trait IntoRowMatrices {
    fn into_row_matrices(self, rows: usize, cols: usize) -> Vec<Matrix>;
}

impl IntoRowMatrices for Matrix {
    /// Interpret each row of `self` as a `rows × cols` matrix (row-major).
    fn into_row_matrices(self, rows: usize, cols: usize) -> Vec<Matrix> {
        (0..self.rows())
            .map(|r| {
                let mut m = Matrix::zeros(self.field(), rows, cols);
                for t in 0..rows {
                    for s in 0..cols {
                        m.set(t, s, self.get(r, t * cols + s).clone());
                    }
                }
                m
            })
            .collect()
    }
}

/// True iff the projective cover splits.
pub fn is_projective(m: &RightModule) -> Result<bool, Error> {
    if m.dim() == 0 {
        return Ok(true);
    }
    let pres = presentation_of(m)?;
    let homs = hom_space_presented(&pres, m, &pres.cover.p0);
    let targets: Vec<Matrix> =
        homs.iter().map(|s| pres.cover.pi.matrix.mul(&s.matrix).expect("shape")).collect();
    let id = Matrix::identity(m.field(), m.dim());
    Ok(solve_linear_combination(&targets, &id).is_some())
}

/// A minimal projective resolution `P_ℓ → … → P₀ ↠ M`, with syzygies.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub covers: Vec<Cover>,
    /// syzygies\[i\] = (Ω^{i+1}, inclusion into covers\[i\].p0)
    pub syzygies: Vec<(RightModule, ModuleMap)>,
}

impl Resolution {
    /// `Ω^i(M)` for `i ≥ 1` (zero module once the resolution terminates).
    pub fn syzygy(&self, i: usize) -> &RightModule {
        &self.syzygies[i - 1].0
    }

    pub fn syzygy_inclusion(&self, i: usize) -> &ModuleMap {
        &self.syzygies[i - 1].1
    }

    /// Differential `d_i: P_i → P_{i−1}` for `i ≥ 1`.
    pub fn differential(&self, i: usize) -> ModuleMap {
        let incl = &self.syzygies[i - 1].1;
        ModuleMap { matrix: incl.matrix.mul(&self.covers[i].pi.matrix).expect("shape") }
    }
}

/// Iterated projective covers. Produces `length` covers, exposing
/// `Ω¹ … Ω^length`.
pub fn minimal_resolution(m: &RightModule, length: usize) -> Result<Resolution, Error> {
    let mut covers = Vec::new();
    let mut syzygies: Vec<(RightModule, ModuleMap)> = Vec::new();
    let mut current = m.clone();
    for _ in 0..length {
        let cover = cover_allow_zero(&current)?;
        let (ker, incl) = kernel_module(&cover.pi, &cover.p0);
        covers.push(cover);
        syzygies.push((ker.clone(), incl));
        current = ker;
    }
    Ok(Resolution { covers, syzygies })
}

/// Hom(M, N) modulo maps factoring through a projective: the image of
/// `Hom(M, P(N)) → Hom(M, N)` under postcomposition with the cover.
#[derive(Debug, Clone)]
pub struct StableHom {
    pub hom: Vec<ModuleMap>,
    /// span of projectively-trivial maps, in flattened matrix coordinates
    pub trivial: Subspace,
    target_dim: usize,
    source_dim: usize,
}

fn flatten(matrix: &Matrix) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(matrix.rows() * matrix.cols());
    for r in 0..matrix.rows() {
        out.extend(matrix.row(r).iter().cloned());
    }
    out
}

pub fn stable_hom_space(m: &RightModule, n: &RightModule) -> Result<StableHom, Error> {
    let hom = hom_space(m, n)?;
    let field = m.field();
    let trivial = if n.dim() == 0 {
        Subspace::zero(field, 0)
    } else {
        let cover = projective_cover(n)?;
        let through = hom_space(m, &cover.p0)?;
        let mut b = EchelonBuilder::new(field, m.dim() * n.dim());
        for f in &through {
            b.insert(flatten(&cover.pi.matrix.mul(&f.matrix).expect("shape")));
        }
        b.into_subspace()
    };
    Ok(StableHom { hom, trivial, target_dim: n.dim(), source_dim: m.dim() })
}

impl StableHom {
    pub fn dim(&self) -> usize {
        let field = self.trivial.field();
        let mut b = EchelonBuilder::new(field, self.source_dim * self.target_dim);
        for r in 0..self.trivial.dim() {
            b.insert(self.trivial.basis_row(r).to_vec());
        }
        let mut extra = 0;
        for f in &self.hom {
            if b.insert(flatten(&f.matrix)) {
                extra += 1;
            }
        }
        extra
    }

    /// Does this map (given as a matrix target×source) factor through a
    /// projective?
    pub fn is_stably_zero(&self, map: &ModuleMap) -> bool {
        self.trivial.contains(&flatten(&map.matrix))
    }
}

/// Is `f: M → N` an isomorphism in the stable category? Looks for a
/// two-sided inverse modulo maps factoring through projectives, by solving
/// linear systems — no search involved, so the answer is exact.
pub fn is_stable_isomorphism(
    f: &ModuleMap,
    m: &RightModule,
    n: &RightModule,
) -> Result<bool, Error> {
    let field = m.field();
    let unflatten = |row: &[Scalar], rows: usize, cols: usize| -> Matrix {
        let mut mat = Matrix::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                mat.set(r, c, row[r * cols + c].clone());
            }
        }
        mat
    };
    let back = hom_space(n, m)?;
    // g∘f ≡ id_M modulo the projectively-trivial endomorphisms of M
    let triv_m = stable_hom_space(m, m)?.trivial;
    let mut targets: Vec<Matrix> =
        back.iter().map(|g| g.matrix.mul(&f.matrix).expect("shape")).collect();
    for r in 0..triv_m.dim() {
        targets.push(unflatten(triv_m.basis_row(r), m.dim(), m.dim()));
    }
    if solve_linear_combination(&targets, &Matrix::identity(field, m.dim())).is_none() {
        return Ok(false);
    }
    // f∘g ≡ id_N modulo the projectively-trivial endomorphisms of N
    let triv_n = stable_hom_space(n, n)?.trivial;
    let mut targets: Vec<Matrix> =
        back.iter().map(|g| f.matrix.mul(&g.matrix).expect("shape")).collect();
    for r in 0..triv_n.dim() {
        targets.push(unflatten(triv_n.basis_row(r), n.dim(), n.dim()));
    }
    Ok(solve_linear_combination(&targets, &Matrix::identity(field, n.dim())).is_some())
}

/// Result of a search that can prove presence, prove absence, or run out
/// of budget.
#[derive(Debug, Clone)]
pub enum Verdict<T> {
    Yes(T),
    No,
    Undetermined,
}

impl<T> Verdict<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }
}

/// Search policy for isomorphism hunting: exhaustive over small prime
/// fields, seeded random sampling otherwise.
#[derive(Debug, Clone, Copy)]
pub struct SearchPolicy {
    pub budget: usize,
    pub seed: u64,
    /// exhaustive enumeration allowed while p^h stays at or under this
    pub exhaustive_cap: u64,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy { budget: 200, seed: 0, exhaustive_cap: 20_000 }
    }
}

/// Find an isomorphism `M → N` inside the Hom space, or prove there is
/// none. Deterministic given the policy.
pub fn find_isomorphism(
    m: &RightModule,
    n: &RightModule,
    policy: &SearchPolicy,
) -> Result<Verdict<ModuleMap>, Error> {
    if m.dim() != n.dim() {
        return Ok(Verdict::No);
    }
    if m.dim() == 0 {
        return Ok(Verdict::Yes(ModuleMap::zero(m.field(), 0, 0)));
    }
    let homs = hom_space(m, n)?;
    if homs.is_empty() {
        return Ok(Verdict::No);
    }
    let field = m.field();
    // quick attempts: each basis map, then the sum of all
    for f in &homs {
        if f.matrix.inverse().is_some() {
            return Ok(Verdict::Yes(f.clone()));
        }
    }
    let sum = homs.iter().skip(1).fold(homs[0].clone(), |acc, f| acc.add(f));
    if sum.matrix.inverse().is_some() {
        return Ok(Verdict::Yes(sum));
    }
    let h = homs.len() as u32;
    match field {
        Field::Fp(p) => {
            let total = (p as u64).checked_pow(h);
            if let Some(total) = total.filter(|&t| t <= policy.exhaustive_cap) {
                for code in 1..total {
                    let mut c = code;
                    let mut acc = Matrix::zeros(field, n.dim(), m.dim());
                    for f in &homs {
                        let digit = (c % p as u64) as i64;
                        c /= p as u64;
                        if digit != 0 {
                            acc = acc
                                .add(&f.matrix.scale(&field.from_i64(digit)))
                                .expect("shape");
                        }
                    }
                    if acc.inverse().is_some() {
                        return Ok(Verdict::Yes(ModuleMap { matrix: acc }));
                    }
                }
                return Ok(Verdict::No);
            }
        }
        Field::Rational => {}
    }
    // randomized with budget
    let mut rng = ChaCha20Rng::seed_from_u64(policy.seed);
    for _ in 0..policy.budget {
        let mut acc = Matrix::zeros(field, n.dim(), m.dim());
        for f in &homs {
            let c = match field {
                Field::Fp(p) => field.from_i64(rng.gen_range(0..p) as i64),
                Field::Rational => field.from_i64(rng.gen_range(-10i64..=10)),
            };
            if !c.is_zero() {
                acc = acc.add(&f.matrix.scale(&c)).expect("shape");
            }
        }
        if acc.inverse().is_some() {
            return Ok(Verdict::Yes(ModuleMap { matrix: acc }));
        }
    }
    Ok(Verdict::Undetermined)
}

/// Strip every projective direct summand. Returns the stripped module and
/// the idempotent index of each summand removed. Deterministic: a summand
/// `e_cΛ` splits off iff some Hom-basis pair composes to a unit in the
/// local ring `End(e_cΛ)`, detected on the `e_c`-coefficient.
pub fn strip_projective_summands(m: &RightModule) -> Result<(RightModule, Vec<usize>), Error> {
    let algebra = m.algebra().clone();
    let field = m.field();
    let mut current = m.clone();
    let mut stripped = Vec::new();
    'outer: loop {
        if current.dim() == 0 {
            break;
        }
        let pres = presentation_of(&current)?;
        for c in 0..algebra.idempotents().len() {
            let (p, support) = RightModule::projective(&algebra, c);
            if p.dim() == 0 || p.dim() > current.dim() {
                continue;
            }
            // position of the basis element e_c inside the summand basis
            let e_idx = {
                let e = &algebra.idempotents()[c];
                let b = e
                    .iter()
                    .position(|x| x.is_one())
                    .expect("idempotent is a basis vector in a path algebra");
                support.iter().position(|&s| s == b).expect("e_c lies in e_cΛ")
            };
            // t-candidates: basis of M·e_c; s-candidates: Hom(M, e_cΛ)
            let act = current.idempotent_action(c);
            let mut tb = EchelonBuilder::new(field, current.dim());
            let mut t_vectors = Vec::new();
            for j in 0..current.dim() {
                let col = act.column(j);
                if tb.insert(col.clone()) {
                    t_vectors.push(col);
                }
            }
            if t_vectors.is_empty() {
                continue;
            }
            let s_maps = hom_space_presented(&pres, &current, &p);
            for s in &s_maps {
                for x in &t_vectors {
                    let z = s.matrix.apply(x);
                    if z[e_idx].is_zero() {
                        continue;
                    }
                    // unit found: split off e_cΛ along t: b ↦ x·b
                    let t_cols = current.act_basis_batch(x, &support);
                    let t_mat = from_columns(field, current.dim(), &t_cols);
                    let st = s.matrix.mul(&t_mat).expect("shape");
                    let st_inv = st.inverse().expect("unit in local endomorphism ring");
                    let retraction = st_inv.mul(&s.matrix).expect("shape");
                    let (rest, _incl) =
                        kernel_module(&ModuleMap { matrix: retraction }, &current);
                    stripped.push(c);
                    current = rest;
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok((current, stripped))
}

/// Stable isomorphism: strip projective summands from both sides, then
/// test plain isomorphism.
pub fn is_stably_isomorphic(
    m: &RightModule,
    n: &RightModule,
    policy: &SearchPolicy,
) -> Result<Verdict<ModuleMap>, Error> {
    let (ms, _) = strip_projective_summands(m)?;
    let (ns, _) = strip_projective_summands(n)?;
    find_isomorphism(&ms, &ns, policy)
}

// ---------------------------------------------------------------------------
// Bimodules
// ---------------------------------------------------------------------------

/// A Λ-bimodule: a right module over the enveloping algebra.
#[derive(Debug, Clone)]
pub struct Bimodule {
    pub module: RightModule,
}

impl Bimodule {
    pub fn env(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }

    pub fn base(&self) -> &Algebra {
        self.env().enveloping_base().expect("bimodule over an enveloping algebra")
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    fn base_gen_count(&self) -> usize {
        self.base().generators().len()
    }

    /// Action of right multiplication by base generator `g` (`g⊗1`).
    pub fn right_action(&self, g: usize) -> &Matrix {
        self.module.gen_action(g)
    }

    /// Action of left multiplication by base generator `g` (`1⊗g`).
    pub fn left_action(&self, g: usize) -> &Matrix {
        self.module.gen_action(self.base_gen_count() + g)
    }

    /// Left multiplication by the base basis element `b_j` as a matrix.
    pub fn left_mul_basis(&self, j: usize) -> Matrix {
        let base = self.base();
        let shift = self.base_gen_count();
        let word: Vec<usize> = base
            .factorization(j)
            .expect("factorizations required")
            .iter()
            .rev()
            .map(|&g| g + shift)
            .collect();
        let mut m = Matrix::identity(self.module.field(), self.dim());
        for &g in &word {
            m = self.module.gen_action(g).mul(&m).expect("square");
        }
        m
    }

    /// Right multiplication by the base basis element `b_j` as a matrix.
    pub fn right_mul_basis(&self, j: usize) -> Matrix {
        let base = self.base();
        let word: Vec<usize> = base.factorization(j).expect("factorizations required").to_vec();
        let mut m = Matrix::identity(self.module.field(), self.dim());
        for &g in &word {
            m = self.module.gen_action(g).mul(&m).expect("square");
        }
        m
    }
}

/// `Λ` as a bimodule over `Λ^e`.
pub fn regular_bimodule(env: &Arc<Algebra>) -> Bimodule {
    let base = env.enveloping_base().expect("enveloping algebra required");
    let mut gen_actions = Vec::new();
    for (_, g) in base.generators() {
        gen_actions.push(base.right_mul_matrix(g));
    }
    for (_, g) in base.generators() {
        gen_actions.push(base.left_mul_matrix(g));
    }
    Bimodule { module: RightModule::new(env.clone(), base.dim(), gen_actions) }
}

/// The twisted bimodule `_φΛ_ψ` with `a·x·b = φ(a)xψ(b)`.
pub fn twisted_bimodule(
    env: &Arc<Algebra>,
    phi: &AlgebraMorphism,
    psi: &AlgebraMorphism,
) -> Result<Bimodule, Error> {
    let base = env.enveloping_base().expect("enveloping algebra required");
    if !phi.is_automorphism(base)? || !psi.is_automorphism(base)? {
        return Err(Error::Unsupported("twists must be algebra automorphisms".into()));
    }
    let mut gen_actions = Vec::new();
    for (_, g) in base.generators() {
        gen_actions.push(base.right_mul_matrix(&psi.apply(g)));
    }
    for (_, g) in base.generators() {
        gen_actions.push(base.left_mul_matrix(&phi.apply(g)));
    }
    Ok(Bimodule { module: RightModule::new(env.clone(), base.dim(), gen_actions) })
}

/// `_σΛ_1` for a suspension-style twist on the left only.
pub fn left_twisted_bimodule(env: &Arc<Algebra>, sigma: &AlgebraMorphism) -> Result<Bimodule, Error> {
    let base = env.enveloping_base().expect("enveloping algebra required");
    twisted_bimodule(env, sigma, &AlgebraMorphism::identity(base))
}

/// `M ⊗_Λ N` of bimodules: quotient of `M ⊗_k N` by the middle relations
/// `ma⊗n − m⊗an` for `a` running over algebra generators.
pub fn tensor_bimodules(x: &Bimodule, y: &Bimodule) -> Bimodule {
    let env = x.env().clone();
    let field = x.module.field();
    let (xd, yd) = (x.dim(), y.dim());
    let ambient = xd * yd;
    let gcount = x.base_gen_count();
    let mut rel = EchelonBuilder::new(field, ambient);
    for g in 0..gcount {
        let ra = x.right_action(g); // m ↦ m·a
        let la = y.left_action(g); // n ↦ a·n
        for i in 0..xd {
            let mi = ra.column(i);
            for j in 0..yd {
                let nj = la.column(j);
                let mut v = vec![field.zero(); ambient];
                for (t, c) in mi.iter().enumerate() {
                    if !c.is_zero() {
                        v[t * yd + j] = v[t * yd + j].add(c);
                    }
                }
                for (t, c) in nj.iter().enumerate() {
                    if !c.is_zero() {
                        v[i * yd + t] = v[i * yd + t].sub(c);
                    }
                }
                rel.insert(v);
            }
        }
    }
    let relations = rel.into_subspace();
    // ambient actions: right mult on the right factor, left mult on the left
    let ambient_action = |mx: Option<&Matrix>, my: Option<&Matrix>| -> Matrix {
        match (mx, my) {
            (Some(a), None) => a.kronecker(&Matrix::identity(field, yd)).expect("field"),
            (None, Some(b)) => Matrix::identity(field, xd).kronecker(b).expect("field"),
            _ => unreachable!(),
        }
    };
    let carrier = RightModule::new(
        env.clone(),
        ambient,
        (0..env.generators().len())
            .map(|g| {
                if g < gcount {
                    ambient_action(None, Some(y.module.gen_action(g)))
                } else {
                    ambient_action(Some(x.module.gen_action(g)), None)
                }
            })
            .collect(),
    );
    let (q, _) = carrier.quotient(&relations);
    Bimodule { module: q }
}

/// `M ⊗_Λ X` of a right module with a bimodule, a right module again.
/// Also returns the projection from the ambient `M ⊗_k X` (coordinates
/// `i·dim(X)+j`) onto the quotient.
pub fn tensor_module_bimodule(m: &RightModule, x: &Bimodule) -> (RightModule, ModuleMap) {
    let base_arc = {
        // the module's algebra must be the bimodule's base
        m.algebra().clone()
    };
    let field = m.field();
    let (md, xd) = (m.dim(), x.dim());
    let ambient = md * xd;
    let gcount = x.base_gen_count();
    assert_eq!(gcount, base_arc.generators().len());
    let mut rel = EchelonBuilder::new(field, ambient);
    for g in 0..gcount {
        let ra = m.gen_action(g);
        let la = x.left_action(g);
        for i in 0..md {
            let mi = ra.column(i);
            for j in 0..xd {
                let nj = la.column(j);
                let mut v = vec![field.zero(); ambient];
                for (t, c) in mi.iter().enumerate() {
                    if !c.is_zero() {
                        v[t * xd + j] = v[t * xd + j].add(c);
                    }
                }
                for (t, c) in nj.iter().enumerate() {
                    if !c.is_zero() {
                        v[i * xd + t] = v[i * xd + t].sub(c);
                    }
                }
                rel.insert(v);
            }
        }
    }
    let relations = rel.into_subspace();
    let carrier = RightModule::new(
        base_arc.clone(),
        ambient,
        (0..gcount)
            .map(|g| {
                Matrix::identity(field, md)
                    .kronecker(x.right_action(g))
                    .expect("field")
            })
            .collect(),
    );
    carrier.quotient(&relations)
}

/// `Λ ⊗_k Λ` as a bimodule (the free bimodule of rank one) together with
/// the multiplication map onto the regular bimodule.
pub fn free_rank_one(env: &Arc<Algebra>) -> (Bimodule, ModuleMap) {
    let base = env.enveloping_base().expect("enveloping algebra required");
    let field = base.field();
    let d = base.dim();
    let mut gen_actions = Vec::new();
    // right action g⊗1 on x⊗y: x⊗(y·g)
    for (_, g) in base.generators() {
        gen_actions.push(
            Matrix::identity(field, d).kronecker(&base.right_mul_matrix(g)).expect("field"),
        );
    }
    // left action 1⊗g: (g·x)⊗y
    for (_, g) in base.generators() {
        gen_actions.push(
            base.left_mul_matrix(g).kronecker(&Matrix::identity(field, d)).expect("field"),
        );
    }
    let bimodule = Bimodule { module: RightModule::new(env.clone(), d * d, gen_actions) };
    let mut mu = Matrix::zeros(field, d, d * d);
    for i in 0..d {
        for j in 0..d {
            let prod = base.mul_basis(i, j);
            for (t, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    mu.set(t, i * d + j, c.clone());
                }
            }
        }
    }
    (bimodule, ModuleMap { matrix: mu })
}

/// The canonical syzygy `Ω(Λ) = ker(μ: Λ⊗Λ → Λ)` with its inclusion into
/// the free bimodule.
pub fn canonical_syzygy(env: &Arc<Algebra>) -> (Bimodule, ModuleMap, Bimodule) {
    let (free, mu) = free_rank_one(env);
    let (ker, incl) = kernel_module(&mu, &free.module);
    (Bimodule { module: ker }, incl, free)
}

/// If `M ≅ _σΛ_1`, recover σ from a generator `m₀`: `σ(a) = T⁻¹(a·m₀)`
/// where `T(x) = m₀·x`. Returns a verdict; `No` is only claimed after an
/// exhaustive search or a dimension obstruction.
pub fn find_invertible_structure(
    m: &Bimodule,
    policy: &SearchPolicy,
) -> Result<Verdict<AlgebraMorphism>, Error> {
    let base = m.base().clone();
    let d = base.dim();
    if m.dim() != d {
        return Ok(Verdict::No);
    }
    let field = m.module.field();
    let try_generator = |m0: &[Scalar]| -> Option<AlgebraMorphism> {
        // T: Λ → M, a ↦ m₀·a
        let t_cols: Vec<Vec<Scalar>> =
            (0..d).map(|j| m.right_mul_basis(j).apply(m0)).collect();
        let t = from_columns(field, d, &t_cols);
        let t_inv = t.inverse()?;
        // σ(b_j) = T⁻¹(b_j·m₀)
        let sigma_cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| t_inv.apply(&m.left_mul_basis(j).apply(m0)))
            .collect();
        let sigma = AlgebraMorphism { matrix: from_columns(field, d, &sigma_cols) };
        match sigma.is_automorphism(&base) {
            Ok(true) => Some(sigma),
            _ => None,
        }
    };
    // basis vectors first, then exhaustive/random
    for i in 0..d {
        if let Some(s) = try_generator(&basis_vector(field, d, i)) {
            return Ok(Verdict::Yes(s));
        }
    }
    match field {
        Field::Fp(p) => {
            if let Some(total) =
                (p as u64).checked_pow(d as u32).filter(|&t| t <= policy.exhaustive_cap)
            {
                for code in 1..total {
                    let mut c = code;
                    let mut v = vec![field.zero(); d];
                    for slot in v.iter_mut() {
                        *slot = field.from_i64((c % p as u64) as i64);
                        c /= p as u64;
                    }
                    if let Some(s) = try_generator(&v) {
                        return Ok(Verdict::Yes(s));
                    }
                }
                return Ok(Verdict::No);
            }
        }
        Field::Rational => {}
    }
    let mut rng = ChaCha20Rng::seed_from_u64(policy.seed);
    for _ in 0..policy.budget {
        let v: Vec<Scalar> = (0..d)
            .map(|_| match field {
                Field::Fp(p) => field.from_i64(rng.gen_range(0..p) as i64),
                Field::Rational => field.from_i64(rng.gen_range(-10i64..=10)),
            })
            .collect();
        if let Some(s) = try_generator(&v) {
            return Ok(Verdict::Yes(s));
        }
    }
    Ok(Verdict::Undetermined)
}

/// Data of the ζ construction for a bimodule `M`: the two tensor
/// extensions and the connecting map `ζ_M: Ω(Λ)⊗_Λ M → M⊗_Λ Ω(Λ)` obtained
/// by lifting the identity through them.
#[derive(Debug, Clone)]
pub struct Zeta {
    /// `K₁ = ker(Λ⊗M → M) ≅ Ω(Λ)⊗_Λ M` with inclusion into `Λ⊗_k M`
    pub k1: RightModule,
    pub k1_inclusion: ModuleMap,
    /// `K₂ = ker(M⊗Λ → M) ≅ M⊗_Λ Ω(Λ)` with inclusion into `M⊗_k Λ`
    pub k2: RightModule,
    pub k2_inclusion: ModuleMap,
    /// ambient modules `Λ⊗_k M` and `M⊗_k Λ`
    pub left_carrier: RightModule,
    pub right_carrier: RightModule,
    /// the lift `h: Λ⊗M → M⊗Λ` with `μ′∘h = μ`
    pub lift: ModuleMap,
    /// `ζ_M` in the coordinates of `k1` and `k2`
    pub zeta: ModuleMap,
}

/// `Λ⊗_k M` as a bimodule (left action on the free factor, right action on
/// M), with the evaluation `a⊗m ↦ a·m`.
fn left_carrier(m: &Bimodule) -> (RightModule, Matrix) {
    let env = m.env().clone();
    let base = m.base();
    let field = base.field();
    let d = base.dim();
    let md = m.dim();
    let gcount = base.generators().len();
    let mut gen_actions = Vec::new();
    for g in 0..gcount {
        // right: a⊗m ↦ a⊗(m·g)
        gen_actions
            .push(Matrix::identity(field, d).kronecker(m.right_action(g)).expect("field"));
    }
    for (_, gv) in base.generators() {
        // left: a⊗m ↦ (g·a)⊗m
        gen_actions
            .push(base.left_mul_matrix(gv).kronecker(&Matrix::identity(field, md)).expect("field"));
    }
    let carrier = RightModule::new(env, d * md, gen_actions);
    // μ: a⊗m ↦ a·m, columns indexed by (i, s)
    let mut mu = Matrix::zeros(field, md, d * md);
    for i in 0..d {
        let l = m.left_mul_basis(i);
        for s in 0..md {
            for t in 0..md {
                let v = l.get(t, s);
                if !v.is_zero() {
                    mu.set(t, i * md + s, v.clone());
                }
            }
        }
    }
    (carrier, mu)
}

/// `M⊗_k Λ` with the evaluation `m⊗a ↦ m·a`.
fn right_carrier(m: &Bimodule) -> (RightModule, Matrix) {
    let env = m.env().clone();
    let base = m.base();
    let field = base.field();
    let d = base.dim();
    let md = m.dim();
    let gcount = base.generators().len();
    let mut gen_actions = Vec::new();
    for (_, gv) in base.generators() {
        // right: m⊗a ↦ m⊗(a·g)
        gen_actions.push(
            Matrix::identity(field, md).kronecker(&base.right_mul_matrix(gv)).expect("field"),
        );
    }
    for g in 0..gcount {
        // left: m⊗a ↦ (g·m)⊗a
        gen_actions.push(m.left_action(g).kronecker(&Matrix::identity(field, d)).expect("field"));
    }
    let carrier = RightModule::new(env, md * d, gen_actions);
    let mut mu = Matrix::zeros(field, md, md * d);
    for i in 0..d {
        let r = m.right_mul_basis(i);
        for s in 0..md {
            for t in 0..md {
                let v = r.get(t, s);
                if !v.is_zero() {
                    mu.set(t, s * d + i, v.clone());
                }
            }
        }
    }
    (carrier, mu)
}

/// Compute ζ_M by lifting the identity through the two tensor extensions.
pub fn zeta_map(m: &Bimodule) -> Result<Zeta, Error> {
    let (lc, mu1) = left_carrier(m);
    let (rc, mu2) = right_carrier(m);
    let pres = presentation_of(&lc)?;
    let homs = hom_space_presented(&pres, &lc, &rc);
    // want h with μ₂∘h = μ₁
    let targets: Vec<Matrix> = homs.iter().map(|f| mu2.mul(&f.matrix).expect("shape")).collect();
    let coeffs = solve_linear_combination(&targets, &mu1)
        .ok_or_else(|| Error::Unsupported("no lift between tensor extensions (bug)".into()))?;
    let mut lift = Matrix::zeros(lc.field(), rc.dim(), lc.dim());
    for (c, f) in coeffs.iter().zip(&homs) {
        if !c.is_zero() {
            lift = lift.add(&f.matrix.scale(c)).expect("shape");
        }
    }
    let (k1, i1) = kernel_module(&ModuleMap { matrix: mu1.clone() }, &lc);
    let (k2, i2) = kernel_module(&ModuleMap { matrix: mu2.clone() }, &rc);
    // ζ in kernel coordinates
    let mut zeta = Matrix::zeros(lc.field(), k2.dim(), k1.dim());
    let k2_space = {
        // coordinates relative to k2's basis rows
        mu2.kernel_basis()
    };
    for j in 0..k1.dim() {
        let img = lift.apply(i1.matrix.column(j).as_slice());
        let coords = k2_space
            .coordinates(&img)
            .ok_or_else(|| Error::Shape("lift does not preserve kernels".into()))?;
        for (t, v) in coords.into_iter().enumerate() {
            zeta.set(t, j, v);
        }
    }
    Ok(Zeta {
        k1,
        k1_inclusion: i1,
        k2,
        k2_inclusion: i2,
        left_carrier: lc,
        right_carrier: rc,
        lift: ModuleMap { matrix: lift },
        zeta: ModuleMap { matrix: zeta },
    })
}

/// The canonical comparison maps `Ω⊗_ΛΩ → K₁` and `→ K₂` used to state
/// the sign lemma on the nose: with `Ω = ker(Λ⊗Λ → Λ)`, an element
/// `ω⊗ω′` maps to `Σ aᵢ⊗(bᵢ·ω′)` resp. `Σ (ω·a′ⱼ)⊗b′ⱼ` when
/// `ω = Σ aᵢ⊗bᵢ`, `ω′ = Σ a′ⱼ⊗b′ⱼ`.
pub struct SyzygySquare {
    pub tensor: Bimodule,
    /// map from the ambient `Ω⊗_k Ω` to the tensor quotient coordinates
    pub quotient: Matrix,
    pub into_k1: ModuleMap,
    pub into_k2: ModuleMap,
}

pub fn syzygy_square(env: &Arc<Algebra>, zeta: &Zeta, omega: &Bimodule, incl: &ModuleMap) -> SyzygySquare {
    let base = env.enveloping_base().expect("enveloping algebra required");
    let field = base.field();
    let d = base.dim();
    let od = omega.dim();
    // ambient maps Ω⊗_k Ω → Λ⊗_k Ω and Ω⊗_k Ω → Ω⊗_k Λ
    let mut a1 = Matrix::zeros(field, d * od, od * od);
    let mut a2 = Matrix::zeros(field, od * d, od * od);
    // left-multiplication of each base basis element on Ω
    let lmul: Vec<Matrix> = (0..d).map(|j| omega.left_mul_basis(j)).collect();
    let rmul: Vec<Matrix> = (0..d).map(|j| omega.right_mul_basis(j)).collect();
    for r in 0..od {
        let w = incl.matrix.column(r); // ω_r inside Λ⊗Λ, coords (i·d+j)
        for s in 0..od {
            // φ₁(ω_r⊗ω_s) = Σ_{ij} c_{ij} b_i ⊗ (b_j·ω_s)
            for (k, c) in w.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (k / d, k % d);
                let lw = lmul[j].column(s);
                for (t, v) in lw.iter().enumerate() {
                    if !v.is_zero() {
                        let row = i * od + t;
                        let cur = a1.get(row, r * od + s).add(&c.mul(v));
                        a1.set(row, r * od + s, cur);
                    }
                }
            }
            // φ₂(ω_s⊗ω_r)… careful: columns are indexed by (r,s) = ω_r⊗ω_s
            let w2 = incl.matrix.column(s); // ω_s = Σ a′⊗b′
            for (k, c) in w2.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (k / d, k % d);
                let rw = rmul[i].column(r); // ω_r·a′_i
                for (t, v) in rw.iter().enumerate() {
                    if !v.is_zero() {
                        let row = t * d + j;
                        let cur = a2.get(row, r * od + s).add(&c.mul(v));
                        a2.set(row, r * od + s, cur);
                    }
                }
            }
        }
    }
    // Pass to tensor-quotient coordinates and kernel coordinates.
    let tensor = tensor_bimodules(omega, omega);
    // quotient projection from ambient od*od coordinates
    let ambient = RightModule::new(
        env.clone(),
        od * od,
        vec![Matrix::identity(field, od * od); env.generators().len()],
    );
    let _ = ambient;
    // Recompute the same relation subspace to get the projection matrix.
    let (q_proj, _) = {
        // mirror of tensor_bimodules internals: rebuild the projection
        let gcount = omega.base_gen_count();
        let mut rel = EchelonBuilder::new(field, od * od);
        for g in 0..gcount {
            let ra = omega.right_action(g);
            let la = omega.left_action(g);
            for i in 0..od {
                let mi = ra.column(i);
                for j in 0..od {
                    let nj = la.column(j);
                    let mut v = vec![field.zero(); od * od];
                    for (t, c) in mi.iter().enumerate() {
                        if !c.is_zero() {
                            v[t * od + j] = v[t * od + j].add(c);
                        }
                    }
                    for (t, c) in nj.iter().enumerate() {
                        if !c.is_zero() {
                            v[i * od + t] = v[i * od + t].sub(c);
                        }
                    }
                    rel.insert(v);
                }
            }
        }
        let relations = rel.into_subspace();
        let carrier = RightModule::new(
            env.clone(),
            od * od,
            vec![Matrix::identity(field, od * od); env.generators().len()],
        );
        let (_, proj) = carrier.quotient(&relations);
        (proj, ())
    };
    // into_k1 / into_k2: express the ambient images in kernel coordinates;
    // they land in the kernels because μ(φ₁(…)) = ω·ω′-type products of
    // kernel elements... verified numerically here.
    let k1_space = zeta.k1_inclusion.matrix.transpose().clone();
    let _ = k1_space;
    let k1_sub = Subspace::from_span(zeta.k1_inclusion.matrix.transpose());
    let k2_sub = Subspace::from_span(zeta.k2_inclusion.matrix.transpose());
    let to_coords = |a: &Matrix, sub: &Subspace, kdim: usize| -> Matrix {
        let mut out = Matrix::zeros(field, kdim, tensor.dim());
        // factor through the quotient: columns of the quotient section
        // (pseudo-inverse via solve)
        let sect = q_proj
            .matrix
            .solve(&Matrix::identity(field, tensor.dim()))
            .expect("shape")
            .expect("projection is onto");
        let lifted = a.mul(&sect).expect("shape");
        for j in 0..tensor.dim() {
            let col = lifted.column(j);
            let coords = sub.coordinates(&col).expect("image lies in the kernel");
            for (t, v) in coords.into_iter().enumerate() {
                out.set(t, j, v);
            }
        }
        out
    };
    let into_k1 = ModuleMap { matrix: to_coords(&a1, &k1_sub, zeta.k1.dim()) };
    let into_k2 = ModuleMap { matrix: to_coords(&a2, &k2_sub, zeta.k2.dim()) };
    SyzygySquare { tensor, quotient: q_proj.matrix, into_k1, into_k2 }
}

/// Dual of a right module as a right module over the opposite algebra.
pub fn dual_module(m: &RightModule, opposite: &Arc<Algebra>) -> RightModule {
    let gen_actions = m.gen_actions.iter().map(Matrix::transpose).collect();
    RightModule::new(opposite.clone(), m.dim(), gen_actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Arrow, QuiverPresentation};

    fn dual_numbers(p: u32) -> Arc<Algebra> {
        let field = Field::Fp(p);
        let mut q = QuiverPresentation::new(
            field,
            vec!["0".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0, degree: 0 }],
            2,
        );
        q.relate(&[(1, &["x", "x"])]);
        Arc::new(Algebra::from_presentation(&q).unwrap())
    }

    fn arrow_quiver() -> Arc<Algebra> {
        // path algebra of • → •, no relations
        let q = QuiverPresentation::new(
            Field::Fp(3),
            vec!["0".into(), "1".into()],
            vec![Arrow { name: "a".into(), source: 0, target: 1, degree: 0 }],
            1,
        );
        Arc::new(Algebra::from_presentation(&q).unwrap())
    }

    fn nakayama(field: Field, m: usize, n: usize) -> Arc<Algebra> {
        let vertices = (0..m).map(|v| v.to_string()).collect();
        let arrows = (0..m)
            .map(|v| Arrow { name: format!("a{v}"), source: v, target: (v + 1) % m, degree: 0 })
            .collect();
        let mut q = QuiverPresentation::new(field, vertices, arrows, n + 1);
        for v in 0..m {
            let word: Vec<String> = (0..=n).map(|k| format!("a{}", (v + k) % m)).collect();
            let refs: Vec<&str> = word.iter().map(String::as_str).collect();
            q.relate(&[(1, &refs)]);
        }
        Arc::new(Algebra::from_presentation(&q).unwrap())
    }

    #[test]
    fn regular_module_verifies_and_is_projective() {
        let a = dual_numbers(3);
        let reg = RightModule::regular(&a);
        assert!(reg.verify());
        assert!(is_projective(&reg).unwrap());
    }

    #[test]
    fn simple_module_not_projective_with_periodic_syzygy() {
        let a = dual_numbers(3);
        let reg = RightModule::regular(&a);
        let rad = reg.radical_subspace().unwrap();
        let (simple, _) = reg.quotient(&rad);
        assert_eq!(simple.dim(), 1);
        assert!(!is_projective(&simple).unwrap());
        let res = minimal_resolution(&simple, 2).unwrap();
        assert_eq!(res.syzygy(1).dim(), 1); // Ω(k) ≅ k for dual numbers
        assert_eq!(res.syzygy(2).dim(), 1);
    }

    #[test]
    fn hom_dimensions() {
        let a = dual_numbers(3);
        let reg = RightModule::regular(&a);
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), 2); // Hom(Λ,Λ) ≅ Λ
        let rad = reg.radical_subspace().unwrap();
        let (simple, _) = reg.quotient(&rad);
        assert_eq!(hom_space(&reg, &simple).unwrap().len(), 1);
        // different simples over k²
        let k2 = nakayama(Field::Fp(3), 2, 1);
        let reg2 = RightModule::regular(&k2);
        let (p0, _) = RightModule::projective(&k2, 0);
        let (p1, _) = RightModule::projective(&k2, 1);
        let r0 = minimal_resolution(&p0, 0);
        let _ = (reg2, r0);
        let rad0 = p0.radical_subspace().unwrap();
        let (s0, _) = p0.quotient(&rad0);
        let rad1 = p1.radical_subspace().unwrap();
        let (s1, _) = p1.quotient(&rad1);
        assert_eq!(hom_space(&s0, &s1).unwrap().len(), 0);
        assert_eq!(hom_space(&s0, &s0).unwrap().len(), 1);
    }

    #[test]
    fn presented_hom_matches_naive() {
        let a = nakayama(Field::Fp(3), 2, 2);
        let reg = RightModule::regular(&a);
        let rad = reg.radical_subspace().unwrap();
        let (top, _) = reg.quotient(&rad);
        for (m, n) in [(&reg, &top), (&top, &reg), (&reg, &reg)] {
            let naive = hom_space_naive(m, n);
            let pres = presentation_of(m).unwrap();
            let presented = hom_space_presented(&pres, m, n);
            assert_eq!(naive.len(), presented.len());
            // same span
            let mut b = EchelonBuilder::new(m.field(), m.dim() * n.dim());
            for f in &naive {
                b.insert(flatten(&f.matrix));
            }
            let rank = b.dim();
            for f in &presented {
                assert!(!b.insert(flatten(&f.matrix)));
            }
            assert_eq!(b.dim(), rank);
            for f in &presented {
                assert!(f.check(m, n));
            }
        }
    }

    #[test]
    fn selfinjectivity_votes() {
        assert!(dual_numbers(3).is_selfinjective().unwrap());
        assert!(!arrow_quiver().is_selfinjective().unwrap());
        assert!(nakayama(Field::Fp(3), 2, 2).is_selfinjective().unwrap());
        assert!(nakayama(Field::Rational, 3, 1).is_selfinjective().unwrap());
    }

    #[test]
    fn canonical_syzygy_of_dual_numbers() {
        let a = dual_numbers(3);
        let env = Arc::new(a.enveloping_algebra());
        let (omega, incl, _free) = canonical_syzygy(&env);
        assert_eq!(omega.dim(), 2); // d² − d = 2
        // generator x⊗1 − 1⊗x: check it lies in the kernel span
        let field = a.field();
        // basis of Λ: e, x → index of x⊗1 is 1·2+0 = 2? labels: basis 0 = e, 1 = x
        let mut v = vec![field.zero(); 4];
        v[2] = field.one(); // x⊗e
        v[1] = field.from_i64(-1); // e⊗x
        let space = Subspace::from_span(incl.matrix.transpose());
        assert!(space.contains(&v));
    }

    #[test]
    fn omega_one_twist_for_dual_numbers() {
        let a = dual_numbers(3);
        let env = Arc::new(a.enveloping_algebra());
        let reg = regular_bimodule(&env);
        assert!(reg.module.verify());
        let res = minimal_resolution(&reg.module, 1).unwrap();
        let omega = Bimodule { module: res.syzygy(1).clone() };
        assert_eq!(omega.dim(), 2);
        let policy = SearchPolicy::default();
        match find_invertible_structure(&omega, &policy).unwrap() {
            Verdict::Yes(sigma) => {
                // σ(x) = −x
                let field = a.field();
                let x = basis_vector(field, 2, 1);
                let sx = sigma.apply(&x);
                assert_eq!(sx, vec![field.zero(), field.from_i64(-1)]);
            }
            other => panic!("expected twist, got {other:?}"),
        }
    }

    #[test]
    fn twisted_tensor_composes() {
        let a = dual_numbers(3);
        let env = Arc::new(a.enveloping_algebra());
        let field = a.field();
        let sigma = AlgebraMorphism { matrix: Matrix::from_i64(field, 2, 2, &[1, 0, 0, -1]) };
        let id = AlgebraMorphism::identity(&a);
        let t_sigma = left_twisted_bimodule(&env, &sigma).unwrap();
        let t_id = left_twisted_bimodule(&env, &id).unwrap();
        // _σΛ₁ ⊗ _σΛ₁ ≅ _{σσ}Λ₁ = Λ
        let prod = tensor_bimodules(&t_sigma, &t_sigma);
        assert_eq!(prod.dim(), 2);
        let reg = regular_bimodule(&env);
        let policy = SearchPolicy::default();
        assert!(find_isomorphism(&prod.module, &reg.module, &policy).unwrap().is_yes());
        // _σΛ₁ ⊗ Λ ≅ _σΛ₁
        let prod2 = tensor_bimodules(&t_sigma, &t_id);
        assert!(find_isomorphism(&prod2.module, &t_sigma.module, &policy).unwrap().is_yes());
        // and ≇ Λ
        assert!(find_isomorphism(&prod2.module, &reg.module, &policy).unwrap().is_no());
    }

    #[test]
    fn tensor_unit_law() {
        let a = nakayama(Field::Fp(3), 2, 1);
        let env = Arc::new(a.enveloping_algebra());
        let reg = regular_bimodule(&env);
        let prod = tensor_bimodules(&reg, &reg);
        assert_eq!(prod.dim(), reg.dim());
        let policy = SearchPolicy::default();
        assert!(find_isomorphism(&prod.module, &reg.module, &policy).unwrap().is_yes());
    }

    #[test]
    fn stable_hom_of_projective_vanishes() {
        let a = dual_numbers(3);
        let reg = RightModule::regular(&a);
        let sh = stable_hom_space(&reg, &reg).unwrap();
        assert_eq!(sh.hom.len(), 2);
        assert_eq!(sh.dim(), 0); // projective source
        // one-sided stable endos of the simple module
        let rad = reg.radical_subspace().unwrap();
        let (simple, _) = reg.quotient(&rad);
        let sh2 = stable_hom_space(&simple, &simple).unwrap();
        assert_eq!(sh2.dim(), 1);
    }

    #[test]
    fn strip_removes_added_projectives() {
        let a = dual_numbers(3);
        let reg = RightModule::regular(&a);
        let rad = reg.radical_subspace().unwrap();
        let (simple, _) = reg.quotient(&rad);
        let sum = RightModule::direct_sum(&[&simple, &reg]);
        let (stripped, removed) = strip_projective_summands(&sum).unwrap();
        assert_eq!(stripped.dim(), 1);
        assert_eq!(removed, vec![0]);
        let policy = SearchPolicy::default();
        assert!(is_stably_isomorphic(&sum, &simple, &policy).unwrap().is_yes());
    }

    #[test]
    fn zeta_exists_and_respects_kernels() {
        let a = dual_numbers(3);
        let env = Arc::new(a.enveloping_algebra());
        let reg = regular_bimodule(&env);
        let z = zeta_map(&reg).unwrap();
        assert_eq!(z.k1.dim(), z.k2.dim());
        // ζ_Λ is an isomorphism (unit coherence)
        assert!(z.zeta.matrix.inverse().is_some());
    }

    #[test]
    fn zeta_sign_on_syzygy() {
        for p in [3u32, 2] {
            let a = dual_numbers(p);
            let env = Arc::new(a.enveloping_algebra());
            let (omega, incl, _) = canonical_syzygy(&env);
            let z = zeta_map(&omega).unwrap();
            let sq = syzygy_square(&env, &z, &omega, &incl);
            // ζ∘(into_k1) + into_k2 factors through a projective
            let combo = z.zeta.compose(&sq.into_k1).add(&sq.into_k2);
            let sh = stable_hom_space(&sq.tensor.module, &z.k2).unwrap();
            assert!(sh.is_stably_zero(&combo), "char {p}: ζ ≠ −1 stably");
            if p == 3 {
                // and ζ − (−1)·comparison is not itself zero stably… i.e. ζ ≠ +1
                let combo2 = z.zeta.compose(&sq.into_k1).add(&sq.into_k2.scale(&a.field().from_i64(-1)));
                assert!(!sh.is_stably_zero(&combo2), "char 3: ζ should differ from +1");
            }
        }
    }

    #[test]
    fn separable_algebra_has_projective_regular_bimodule() {
        let q = QuiverPresentation::new(
            Field::Fp(5),
            vec!["0".into(), "1".into(), "2".into()],
            vec![],
            0,
        );
        let a = Arc::new(Algebra::from_presentation(&q).unwrap());
        let env = Arc::new(a.enveloping_algebra());
        let reg = regular_bimodule(&env);
        assert!(is_projective(&reg.module).unwrap());
        let res = minimal_resolution(&reg.module, 1).unwrap();
        assert_eq!(res.syzygy(1).dim(), 0);
    }

    #[test]
    fn bimodule_cover_dimension_of_nakayama() {
        // bimodule cover of Λ has dimension m(n+1)²
        let (m, n) = (2usize, 2usize);
        let a = nakayama(Field::Fp(3), m, n);
        let env = Arc::new(a.enveloping_algebra());
        let reg = regular_bimodule(&env);
        let cover = projective_cover(&reg.module).unwrap();
        assert_eq!(cover.p0.dim(), m * (n + 1) * (n + 1));
    }

    #[test]
    fn minimal_resolution_is_exact_and_minimal() {
        let a = dual_numbers(3);
        let env = Arc::new(a.enveloping_algebra());
        let reg = regular_bimodule(&env);
        let res = minimal_resolution(&reg.module, 4).unwrap();
        for i in 1..=2 {
            let d_i = res.differential(i);
            let d_next = res.differential(i + 1);
            // exactness: rank d_{i+1} = dim ker d_i
            let prod = d_i.matrix.mul(&d_next.matrix).unwrap();
            assert!(prod.is_zero());
            assert_eq!(d_next.matrix.rank(), d_i.matrix.kernel_basis().dim());
            // minimality: image inside rad·P
            let rad = res.covers[i - 1].p0.radical_subspace().unwrap();
            for j in 0..d_i.matrix.cols() {
                assert!(rad.contains(&d_i.matrix.column(j)));
            }
        }
        // syzygies of a minimal resolution carry no projective summands
        let (s, removed) = strip_projective_summands(res.syzygy(2)).unwrap();
        assert_eq!(s.dim(), res.syzygy(2).dim());
        assert!(removed.is_empty());
    }

    #[test]
    fn omega_three_stably_twisted_for_dual_numbers() {
        let a = dual_numbers(3);
        let env = Arc::new(a.enveloping_algebra());
        let reg = regular_bimodule(&env);
        let res = minimal_resolution(&reg.module, 3).unwrap();
        let field = a.field();
        let sigma = AlgebraMorphism { matrix: Matrix::from_i64(field, 2, 2, &[1, 0, 0, -1]) };
        let twisted = left_twisted_bimodule(&env, &sigma).unwrap();
        let policy = SearchPolicy::default();
        assert!(
            is_stably_isomorphic(res.syzygy(3), &twisted.module, &policy).unwrap().is_yes()
        );
        // but not stably isomorphic to the untwisted regular bimodule
        assert!(is_stably_isomorphic(res.syzygy(3), &reg.module, &policy).unwrap().is_no());
    }

    #[test]
    fn dual_module_roundtrip() {
        let a = nakayama(Field::Fp(3), 2, 1);
        let op = Arc::new(a.opposite().unwrap());
        let reg = RightModule::regular(&a);
        let d = dual_module(&reg, &op);
        assert!(d.verify());
        let dd = dual_module(&d, &a);
        assert!(dd.verify());
        let policy = SearchPolicy::default();
        assert!(find_isomorphism(&dd, &reg, &policy).unwrap().is_yes());
    }
}
