//! Intertwiner spaces, endomorphism algebras with structure constants, and
//! the Hecke algebra of a triple (G, H, eta) in both of its models: the
//! convolution algebra of bi-equivariant functions G -> End(eta), and
//! End_G(ind_H^G eta). The explicit map between the two is certified
//! (bijective and multiplicative on basis pairs) rather than assumed.

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::groups::{
    double_cosets, left_cosets, right_cosets, AntiInvolution, DoubleCosetDecomposition,
    FiniteGroup, Subgroup,
};
use crate::linalg::{solution_matrices, solve_linear_system, MatrixFq, Subspace};
use crate::reps::Representation;
use std::collections::BTreeMap;

/// Basis of intertwiners T: src -> tgt with tgt_i · T = T · src_i for every
/// aligned pair of acting matrices. The bases come out of one kernel
/// computation, so they are canonical.
pub fn module_homs(src: &[MatrixFq], tgt: &[MatrixFq]) -> Result<Vec<MatrixFq>> {
    assert_eq!(src.len(), tgt.len(), "acting matrix lists must align");
    assert!(!src.is_empty());
    let blocks: Vec<(MatrixFq, MatrixFq)> =
        tgt.iter().cloned().zip(src.iter().cloned()).collect();
    let space = solve_linear_system(&blocks)?;
    Ok(solution_matrices(&space, tgt[0].rows(), src[0].rows()))
}

/// The space Hom_G(source, target) of intertwiners.
#[derive(Clone)]
pub struct HomSpace {
    source: Representation,
    target: Representation,
    basis: Vec<MatrixFq>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[MatrixFq] {
        &self.basis
    }
    pub fn source(&self) -> &Representation {
        &self.source
    }
    pub fn target(&self) -> &Representation {
        &self.target
    }

    /// Rechecks the intertwining property on every group element, not just
    /// the generators used by the solver.
    pub fn verify_on_all_elements(&self) -> bool {
        (0..self.source.group().order() as u32).all(|g| {
            self.basis.iter().all(|t| {
                t.mul(self.source.image(g)).unwrap() == self.target.image(g).mul(t).unwrap()
            })
        })
    }
}

pub fn hom_space(source: &Representation, target: &Representation) -> Result<HomSpace> {
    if !source.group().same_group(target.group()) {
        return Err(Error::GroupMismatch);
    }
    if source.ctx() != target.ctx() {
        return Err(Error::CtxMismatch(source.ctx().to_string(), target.ctx().to_string()));
    }
    let basis = module_homs(&source.generator_images(), &target.generator_images())?;
    let hs = HomSpace { source: source.clone(), target: target.clone(), basis };
    // the solver constrains generators only; recheck the full group while
    // that stays cheap
    if source.group().order() <= 100 && !hs.verify_on_all_elements() {
        return Err(Error::CertificationFailed(
            "intertwiner fails on a non-generator element".into(),
        ));
    }
    Ok(hs)
}

pub fn hom_dim(source: &Representation, target: &Representation) -> Result<usize> {
    Ok(hom_space(source, target)?.dim())
}

/// A subalgebra of n x n matrices given by a basis, with certified
/// structure constants: every basis product re-expands exactly in the basis.
#[derive(Clone)]
pub struct MatrixAlgebra {
    ambient_dim: usize,
    ctx: FieldCtx,
    basis: Vec<MatrixFq>,
    /// c[(i*k + j)*k + l]: coefficient of b_l in b_i · b_j.
    structure: Vec<u32>,
    has_unit: bool,
    unit_coords: Option<Vec<u32>>,
}

impl std::fmt::Debug for MatrixAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MatrixAlgebra(dim {}, ambient {}x{}, commutative: {})",
            self.dim(),
            self.ambient_dim,
            self.ambient_dim,
            self.is_commutative()
        )
    }
}

impl MatrixAlgebra {
    pub fn from_basis(basis: Vec<MatrixFq>) -> Result<MatrixAlgebra> {
        assert!(!basis.is_empty(), "zero algebras are not used here");
        let ctx = basis[0].ctx().clone();
        let n = basis[0].rows();
        assert!(basis.iter().all(|b| b.rows() == n && b.cols() == n));
        let k = basis.len();

        let mut flat_rows: Vec<Vec<u32>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let flat = MatrixFq::from_rows(&ctx, &flat_rows);
        if flat.rank() != k {
            return Err(Error::CertificationFailed("algebra basis is linearly dependent".into()));
        }
        // all k^2 products as columns of one solve against the basis
        let mut prod_cols: Vec<Vec<u32>> = Vec::with_capacity(k * k);
        for bi in &basis {
            for bj in &basis {
                prod_cols.push(bi.mul(bj)?.entries().to_vec());
            }
        }
        let a = flat.transpose(); // n^2 x k
        let mut bmat = MatrixFq::zero(&ctx, n * n, k * k);
        for (c, col) in prod_cols.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                bmat.set(r, c, v);
            }
        }
        let coords = a
            .solve(&bmat)
            .ok_or_else(|| Error::CertificationFailed("algebra basis is not closed under products".into()))?;
        let mut structure = vec![0u32; k * k * k];
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    structure[(i * k + j) * k + l] = coords.get(l, i * k + j);
                }
            }
        }
        // explicit recheck of the expansion
        for i in 0..k {
            for j in 0..k {
                let mut acc = MatrixFq::zero(&ctx, n, n);
                for (l, b) in basis.iter().enumerate() {
                    let c = structure[(i * k + j) * k + l];
                    if c != 0 {
                        acc = acc.add(&b.scalar_mul(c))?;
                    }
                }
                if acc != basis[i].mul(&basis[j])? {
                    return Err(Error::CertificationFailed("structure constants do not reproduce products".into()));
                }
            }
        }
        let unit_coords = {
            let id = MatrixFq::identity(&ctx, n);
            let mut col = MatrixFq::zero(&ctx, n * n, 1);
            for (r, &v) in id.entries().iter().enumerate() {
                col.set(r, 0, v);
            }
            a.solve(&col).map(|x| (0..k).map(|l| x.get(l, 0)).collect::<Vec<u32>>())
        };
        flat_rows.clear();
        Ok(MatrixAlgebra {
            ambient_dim: n,
            ctx,
            basis,
            structure,
            has_unit: unit_coords.is_some(),
            unit_coords,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn basis(&self) -> &[MatrixFq] {
        &self.basis
    }
    pub fn has_unit(&self) -> bool {
        self.has_unit
    }
    pub fn unit_coords(&self) -> Option<&[u32]> {
        self.unit_coords.as_deref()
    }

    #[inline]
    pub fn structure_constant(&self, i: usize, j: usize, l: usize) -> u32 {
        let k = self.dim();
        self.structure[(i * k + j) * k + l]
    }

    /// True iff c_ijl = c_jil for all triples.
    pub fn is_commutative(&self) -> bool {
        let k = self.dim();
        for i in 0..k {
            for j in (i + 1)..k {
                for l in 0..k {
                    if self.structure_constant(i, j, l) != self.structure_constant(j, i, l) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Sum of coords[l] * b_l as a matrix.
    pub fn element(&self, coords: &[u32]) -> MatrixFq {
        assert_eq!(coords.len(), self.dim());
        let mut acc = MatrixFq::zero(&self.ctx, self.ambient_dim, self.ambient_dim);
        for (l, &c) in coords.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.basis[l].scalar_mul(c)).unwrap();
            }
        }
        acc
    }

    /// Coordinates of a matrix in the basis, if it lies in the span.
    pub fn coords_of(&self, m: &MatrixFq) -> Option<Vec<u32>> {
        let k = self.dim();
        let n = self.ambient_dim;
        let flat = MatrixFq::from_rows(&self.ctx, &self.basis.iter().map(|b| b.entries().to_vec()).collect::<Vec<_>>());
        let a = flat.transpose();
        let mut col = MatrixFq::zero(&self.ctx, n * n, 1);
        for (r, &v) in m.entries().iter().enumerate() {
            col.set(r, 0, v);
        }
        a.solve(&col).map(|x| (0..k).map(|l| x.get(l, 0)).collect())
    }

    /// Product in coordinates through the structure constants.
    pub fn mul_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let k = self.dim();
        let mut out = vec![0u32; k];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let ab = self.ctx.mul_codes(ai, bj);
                for l in 0..k {
                    let c = self.structure_constant(i, j, l);
                    if c != 0 {
                        out[l] = self.ctx.add_codes(out[l], self.ctx.mul_codes(ab, c));
                    }
                }
            }
        }
        out
    }
}

/// End_G(rho) as a matrix algebra with certified structure constants.
pub fn end_algebra(rho: &Representation) -> Result<MatrixAlgebra> {
    let homs = hom_space(rho, rho)?;
    MatrixAlgebra::from_basis(homs.basis)
}

/// Endomorphism algebra of a module given by acting matrices.
pub fn end_algebra_of_module(acting: &[MatrixFq]) -> Result<MatrixAlgebra> {
    MatrixAlgebra::from_basis(module_homs(acting, acting)?)
}

// ---------------------------------------------------------------------------
// Hecke algebra: convolution model
// ---------------------------------------------------------------------------

/// Shared context for Hecke computations on a triple (G, H, eta): the
/// double-coset decomposition and, for every group element, a certified
/// factorization x = h2 · s · h1 over the coset representative s.
pub struct HeckeSpace {
    g: FiniteGroup,
    h: Subgroup,
    eta: Representation,
    dcd: DoubleCosetDecomposition,
    /// per element: (coset position, h2 local index, h1 local index)
    decomp: Vec<(u32, u32, u32)>,
    /// representatives of the right cosets H\G, used by convolution
    right_reps: Vec<u32>,
}

impl HeckeSpace {
    pub fn group(&self) -> &FiniteGroup {
        &self.g
    }
    pub fn subgroup(&self) -> &Subgroup {
        &self.h
    }
    pub fn eta(&self) -> &Representation {
        &self.eta
    }
    pub fn double_cosets(&self) -> &DoubleCosetDecomposition {
        &self.dcd
    }
    pub fn eta_dim(&self) -> usize {
        self.eta.dim()
    }

    fn new(g: &FiniteGroup, h: &Subgroup, eta: &Representation) -> Result<HeckeSpace> {
        assert!(g.same_group(h.parent()));
        assert!(eta.group().same_group(h.group()), "eta must live over the subgroup view");
        let dcd = double_cosets(g, h, h);
        let hg = h.group();
        let mut decomp = vec![(u32::MAX, 0u32, 0u32); g.order()];
        for (pos, &s) in dcd.representatives.iter().enumerate() {
            let e = hg.identity();
            decomp[s as usize] = (pos as u32, e, e);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let (_, h2, h1) = decomp[x as usize];
                for &u in hg.generators() {
                    let up = h.to_parent(u);
                    let y = g.mul(up, x);
                    if decomp[y as usize].0 == u32::MAX {
                        decomp[y as usize] = (pos as u32, hg.mul(u, h2), h1);
                        stack.push(y);
                    }
                    let z = g.mul(x, up);
                    if decomp[z as usize].0 == u32::MAX {
                        decomp[z as usize] = (pos as u32, h2, hg.mul(h1, u));
                        stack.push(z);
                    }
                }
            }
        }
        // certify the factorizations
        for x in 0..g.order() as u32 {
            let (pos, h2, h1) = decomp[x as usize];
            let s = dcd.representatives[pos as usize];
            let rebuilt = g.mul(g.mul(h.to_parent(h2), s), h.to_parent(h1));
            if rebuilt != x {
                return Err(Error::CertificationFailed("double-coset factorization failed".into()));
            }
        }
        let right_reps = right_cosets(g, h).representatives;
        Ok(HeckeSpace { g: g.clone(), h: h.clone(), eta: eta.clone(), dcd, decomp, right_reps })
    }

    /// Value of a Hecke element at an arbitrary group element.
    pub fn evaluate(&self, elt: &HeckeElement, x: u32) -> MatrixFq {
        let d = self.eta.dim();
        let (pos, h2, h1) = self.decomp[x as usize];
        match elt.values.get(&(pos as usize)) {
            None => MatrixFq::zero(self.eta.ctx(), d, d),
            Some(w) => self
                .eta
                .image(h2)
                .mul(w)
                .unwrap()
                .mul(self.eta.image(h1))
                .unwrap(),
        }
    }

    /// Convolution (d1 * d2)(g) = sum over right-coset representatives x of
    /// d1(g x^{-1}) d2(x). The summand is constant on each coset Hx, so any
    /// representative system gives the same result; `reps` is explicit so
    /// tests can exercise that invariance.
    pub fn convolve_with(&self, d1: &HeckeElement, d2: &HeckeElement, reps: &[u32]) -> HeckeElement {
        let d = self.eta.dim();
        let ctx = self.eta.ctx();
        let mut values = BTreeMap::new();
        for (pos, &s) in self.dcd.representatives.iter().enumerate() {
            let mut acc = MatrixFq::zero(ctx, d, d);
            for &x in reps {
                let left = self.evaluate(d1, self.g.mul(s, self.g.inv(x)));
                if left.is_zero() {
                    continue;
                }
                let right = self.evaluate(d2, x);
                if right.is_zero() {
                    continue;
                }
                acc = acc.add(&left.mul(&right).unwrap()).unwrap();
            }
            if !acc.is_zero() {
                values.insert(pos, acc);
            }
        }
        HeckeElement { values }
    }

    pub fn convolve(&self, d1: &HeckeElement, d2: &HeckeElement) -> HeckeElement {
        let reps = self.right_reps.clone();
        self.convolve_with(d1, d2, &reps)
    }

    /// Flattened values on all double-coset representatives.
    fn flatten(&self, elt: &HeckeElement) -> Vec<u32> {
        let d = self.eta.dim();
        let mut out = vec![0u32; self.dcd.representatives.len() * d * d];
        for (&pos, w) in &elt.values {
            out[pos * d * d..(pos + 1) * d * d].copy_from_slice(w.entries());
        }
        out
    }

    /// The unit: supported on H with value eta(h) at h.
    pub fn unit(&self) -> HeckeElement {
        let pos = self.dcd.membership[self.g.identity() as usize] as usize;
        let mut values = BTreeMap::new();
        values.insert(pos, MatrixFq::identity(self.eta.ctx(), self.eta.dim()));
        HeckeElement { values }
    }
}

/// A bi-equivariant function G -> End(eta), stored by its values on the
/// double-coset representatives; zero outside the listed cosets.
#[derive(Clone, Debug)]
pub struct HeckeElement {
    pub values: BTreeMap<usize, MatrixFq>,
}

/// The convolution algebra of a triple, with certified structure constants.
pub struct HeckeAlgebra {
    space: HeckeSpace,
    basis: Vec<HeckeElement>,
    structure: Vec<u32>,
}

impl std::fmt::Debug for HeckeAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HeckeAlgebra(dim {}, commutative: {})", self.dim(), self.is_commutative())
    }
}

impl HeckeAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[HeckeElement] {
        &self.basis
    }
    pub fn space(&self) -> &HeckeSpace {
        &self.space
    }

    #[inline]
    pub fn structure_constant(&self, i: usize, j: usize, l: usize) -> u32 {
        let k = self.dim();
        self.structure[(i * k + j) * k + l]
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.dim();
        for i in 0..k {
            for j in (i + 1)..k {
                for l in 0..k {
                    if self.structure_constant(i, j, l) != self.structure_constant(j, i, l) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Structure constants recomputed over an explicit right-coset
    /// representative system; used to certify well-definedness.
    pub fn structure_with_reps(&self, reps: &[u32]) -> Result<Vec<u32>> {
        structure_constants_from_basis(&self.space, &self.basis, reps)
    }
}

fn structure_constants_from_basis(
    space: &HeckeSpace,
    basis: &[HeckeElement],
    reps: &[u32],
) -> Result<Vec<u32>> {
    let ctx = space.eta.ctx().clone();
    let k = basis.len();
    let flat_len = space.dcd.representatives.len() * space.eta.dim() * space.eta.dim();
    let flat = MatrixFq::from_rows(
        &ctx,
        &basis.iter().map(|b| space.flatten(b)).collect::<Vec<_>>(),
    );
    if flat.rank() != k {
        return Err(Error::CertificationFailed("Hecke basis is linearly dependent".into()));
    }
    let a = flat.transpose();
    let mut bmat = MatrixFq::zero(&ctx, flat_len, k * k);
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let prod = space.convolve_with(bi, bj, reps);
            for (r, &v) in space.flatten(&prod).iter().enumerate() {
                bmat.set(r, i * k + j, v);
            }
        }
    }
    let coords = a
        .solve(&bmat)
        .ok_or_else(|| Error::CertificationFailed("convolution escapes the Hecke basis span".into()))?;
    let mut structure = vec![0u32; k * k * k];
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                structure[(i * k + j) * k + l] = coords.get(l, i * k + j);
            }
        }
    }
    Ok(structure)
}

/// Builds the Hecke algebra of (G, H, eta) in the convolution model. The
/// basis is one function per solution of the bi-equivariance system on each
/// double coset.
pub fn hecke_algebra_convolution(
    g: &FiniteGroup,
    h: &Subgroup,
    eta: &Representation,
) -> Result<HeckeAlgebra> {
    let space = HeckeSpace::new(g, h, eta)?;
    let n_cosets = space.dcd.representatives.len();
    let d = eta.dim();
    if d != 1 && d * n_cosets > 64 {
        return Err(Error::SizeCapExceeded(format!(
            "Hecke cap: dim(eta) * double cosets = {} * {} > 64",
            d, n_cosets
        )));
    }
    let hg = h.group();
    let mut basis = Vec::new();
    for (pos, &s) in space.dcd.representatives.iter().enumerate() {
        // H_s = sHs^{-1} ∩ H: the compatibility subgroup of this coset
        let hs_members: Vec<u32> = h
            .members()
            .iter()
            .copied()
            .filter(|&hp| h.contains(g.mul(g.mul(g.inv(s), hp), s)))
            .collect();
        let hs = Subgroup::from_members(h.parent(), hs_members)?;
        // constraints eta(x) W = W eta(s^{-1} x s) over generators of H_s
        let mut blocks = Vec::new();
        for &gen_local in hs.group().generators() {
            let xp = hs.to_parent(gen_local);
            let x_in_h = h.from_parent(xp).expect("H_s <= H");
            let conj = g.mul(g.mul(g.inv(s), xp), s);
            let conj_in_h = h.from_parent(conj).expect("conjugate lands in H");
            blocks.push((eta.image(x_in_h).clone(), eta.image(conj_in_h).clone()));
        }
        if blocks.is_empty() {
            blocks.push((
                MatrixFq::identity(eta.ctx(), d),
                MatrixFq::identity(eta.ctx(), d),
            ));
        }
        let sols = solve_linear_system(&blocks)?;
        for w in solution_matrices(&sols, d, d) {
            let mut values = BTreeMap::new();
            values.insert(pos, w);
            basis.push(HeckeElement { values });
        }
    }
    // certify bi-equivariance of every basis function on generator boundaries
    for b in &basis {
        for x in 0..g.order() as u32 {
            let val = space.evaluate(b, x);
            for &u in hg.generators() {
                let up = h.to_parent(u);
                let left = space.evaluate(b, g.mul(up, x));
                if left != eta.image(u).mul(&val)? {
                    return Err(Error::CertificationFailed("bi-equivariance failed on the left".into()));
                }
                let right = space.evaluate(b, g.mul(x, up));
                if right != val.mul(eta.image(u))? {
                    return Err(Error::CertificationFailed("bi-equivariance failed on the right".into()));
                }
            }
        }
    }
    let reps = space.right_reps.clone();
    let structure = structure_constants_from_basis(&space, &basis, &reps)?;
    Ok(HeckeAlgebra { space, basis, structure })
}

// ---------------------------------------------------------------------------
// Hecke vs End(ind eta): the explicit isomorphism certificate
// ---------------------------------------------------------------------------

/// Result of certifying the map Delta -> T_Delta with
/// T_Delta(t_i ⊗ v) = sum_j t_j ⊗ Delta(t_j^{-1} t_i) v against
/// End_G(ind_H^G eta): dimensions, bijectivity, multiplicativity.
#[derive(Debug)]
pub struct HeckeEndIso {
    pub hecke_dim: usize,
    pub end_dim: usize,
    pub bijective: bool,
    pub multiplicative: bool,
    /// Images T_Delta of the Hecke basis, in basis order.
    pub t_mats: Vec<MatrixFq>,
}

impl HeckeEndIso {
    pub fn holds(&self) -> bool {
        self.hecke_dim == self.end_dim && self.bijective && self.multiplicative
    }
}

/// Certifies the explicit Hecke -> End_G(ind) map for the given algebra and
/// the induced representation built over the same coset representatives.
pub fn hecke_vs_end_iso_check(
    hecke: &HeckeAlgebra,
    ind: &Representation,
    end: &MatrixAlgebra,
) -> Result<HeckeEndIso> {
    let space = &hecke.space;
    let g = &space.g;
    let h = &space.h;
    let d = space.eta.dim();
    let cosets = left_cosets(g, h);
    let m = cosets.representatives.len();
    assert_eq!(ind.dim(), m * d, "induced representation must match the coset model");

    // T_Delta block (j, i) = Delta(t_j^{-1} t_i)
    let mut t_mats = Vec::with_capacity(hecke.dim());
    for b in &hecke.basis {
        let mut t = MatrixFq::zero(ind.ctx(), m * d, m * d);
        for (j, &tj) in cosets.representatives.iter().enumerate() {
            for (i, &ti) in cosets.representatives.iter().enumerate() {
                let val = space.evaluate(b, g.mul(g.inv(tj), ti));
                if val.is_zero() {
                    continue;
                }
                for r in 0..d {
                    for c in 0..d {
                        t.set(j * d + r, i * d + c, val.get(r, c));
                    }
                }
            }
        }
        t_mats.push(t);
    }

    // each image must be an intertwiner, i.e. lie in End(ind)
    let mut coord_rows: Vec<Vec<u32>> = Vec::with_capacity(t_mats.len());
    for t in &t_mats {
        match end.coords_of(t) {
            Some(c) => coord_rows.push(c),
            None => {
                return Ok(HeckeEndIso {
                    hecke_dim: hecke.dim(),
                    end_dim: end.dim(),
                    bijective: false,
                    multiplicative: false,
                    t_mats,
                })
            }
        }
    }
    let coord_mat = MatrixFq::from_rows(end.ctx(), &coord_rows);
    let bijective = hecke.dim() == end.dim() && coord_mat.rank() == end.dim();

    // multiplicativity on basis pairs: T_{b_i * b_j} = T_{b_i} T_{b_j}
    let k = hecke.dim();
    let mut multiplicative = true;
    'outer: for i in 0..k {
        for j in 0..k {
            let mut expected = MatrixFq::zero(ind.ctx(), m * d, m * d);
            for l in 0..k {
                let c = hecke.structure_constant(i, j, l);
                if c != 0 {
                    expected = expected.add(&t_mats[l].scalar_mul(c))?;
                }
            }
            if expected != t_mats[i].mul(&t_mats[j])? {
                multiplicative = false;
                break 'outer;
            }
        }
    }

    Ok(HeckeEndIso { hecke_dim: hecke.dim(), end_dim: end.dim(), bijective, multiplicative, t_mats })
}

/// Outcome of the anti-involution pullback test on a Hecke algebra.
#[derive(Debug, Clone, Copy)]
pub struct GelfandTrickReport {
    /// Every basis function satisfies f(iota(g)) = f(g) for all g.
    pub pullback_fixed: bool,
    pub hecke_commutative: bool,
}

/// Checks whether the pullback along an anti-involution fixes the Hecke
/// space pointwise on its basis. When it does, commutativity of the Hecke
/// algebra is asserted as a cross-check; a disagreement is an error.
pub fn check_gelfand_trick(hecke: &HeckeAlgebra, iota: &AntiInvolution) -> Result<GelfandTrickReport> {
    let space = &hecke.space;
    assert!(iota.group().same_group(&space.g));
    let pullback_fixed = hecke.basis.iter().all(|b| {
        (0..space.g.order() as u32).all(|x| space.evaluate(b, iota.apply(x)) == space.evaluate(b, x))
    });
    let hecke_commutative = hecke.is_commutative();
    if pullback_fixed && !hecke_commutative {
        return Err(Error::TheoremViolation(
            "anti-involution fixes the Hecke space but the algebra is not commutative".into(),
        ));
    }
    Ok(GelfandTrickReport { pullback_fixed, hecke_commutative })
}

/// Socle multiplicities of each inventory simple in rho. Defined in terms
/// of hom spaces (not composition factors); the inventory must be certified.
pub fn multiplicity_vector(
    rho: &Representation,
    inventory: &crate::meataxe::IrreducibleInventory,
) -> Result<Vec<usize>> {
    if !inventory.certified() {
        return Err(Error::UncertifiedInventory);
    }
    inventory
        .representations()
        .iter()
        .map(|simple| hom_dim(simple, rho))
        .collect()
}

/// The subspace of invariant vectors: Hom(triv, rho) realized as fixed
/// vectors of all images.
pub fn fixed_space(rho: &Representation) -> Result<Subspace> {
    let ctx = rho.ctx();
    let one = MatrixFq::identity(ctx, 1);
    let blocks: Vec<(MatrixFq, MatrixFq)> = rho
        .generator_images()
        .iter()
        .map(|m| (m.clone(), one.clone()))
        .collect();
    // column vectors v with rho(g) v = v, encoded as dim x 1 matrices
    let sols = solve_linear_system(&blocks)?;
    let rows: Vec<Vec<u32>> = (0..sols.dim()).map(|i| sols.basis().row(i).to_vec()).collect();
    if rows.is_empty() {
        return Ok(Subspace::zero(ctx, rho.dim()));
    }
    Ok(Subspace::from_rows(&MatrixFq::from_rows(ctx, &rows)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::groups::{AntiInvolution, FiniteGroup, Subgroup};
    use crate::reps::{gelfand_graev_character_auto, Representation, DEFAULT_MAX_INDUCED_DIM};

    fn gf(p: u64, k: u32) -> FieldCtx {
        FieldCtx::new(p, k).unwrap()
    }

    #[test]
    fn hom_from_trivial_into_permutation_module() {
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let s2 = Subgroup::young(&s3, 2).unwrap();
        let ctx = gf(5, 1);
        let perm = Representation::permutation_rep(&s3, &s2, &ctx).unwrap();
        let triv = Representation::trivial(&s3, &ctx);
        let hs = hom_space(&triv, &perm).unwrap();
        assert_eq!(hs.dim(), 1);
        assert!(hs.verify_on_all_elements());
    }

    #[test]
    fn schur_on_an_absolutely_irreducible_module() {
        let f2 = gf(2, 1);
        let gl22 = FiniteGroup::general_linear_group(2, &f2).unwrap();
        let nat = Representation::natural(&gl22, &f2).unwrap();
        assert_eq!(hom_dim(&nat, &nat).unwrap(), 1);
    }

    #[test]
    fn fixed_space_of_regular_module_is_the_sum_line() {
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let ctx = gf(3, 1);
        let reg = Representation::regular(&s3, &ctx).unwrap();
        let triv = Representation::trivial(&s3, &ctx);
        assert_eq!(hom_dim(&triv, &reg).unwrap(), 1);
        let fs = fixed_space(&reg).unwrap();
        assert_eq!(fs.dim(), 1);
        assert!(fs.contains_vec(&[1u32; 6]));
    }

    #[test]
    fn end_algebra_of_three_point_permutation_module_over_gf2() {
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let s2 = Subgroup::young(&s3, 2).unwrap();
        let ctx = gf(2, 1);
        let perm = Representation::permutation_rep(&s3, &s2, &ctx).unwrap();
        let end = end_algebra(&perm).unwrap();
        // brute-force oracle lives in linalg: the commutant has dim 2
        assert_eq!(end.dim(), 2);
        assert!(end.has_unit());
        assert!(end.is_commutative());
    }

    #[test]
    fn end_algebra_of_trivial_is_one_dimensional() {
        let s4 = FiniteGroup::symmetric_group(4).unwrap();
        let end = end_algebra(&Representation::trivial(&s4, &gf(3, 1))).unwrap();
        assert_eq!(end.dim(), 1);
        assert!(end.is_commutative());
    }

    #[test]
    fn regular_q8_over_gf2_has_noncommutative_group_algebra_endos() {
        let q8 = FiniteGroup::quaternion8().unwrap();
        let reg = Representation::regular(&q8, &gf(2, 1)).unwrap();
        let end = end_algebra(&reg).unwrap();
        assert_eq!(end.dim(), 8);
        assert!(!end.is_commutative());
        assert!(end.has_unit());
    }

    #[test]
    fn permutation_module_is_isomorphic_to_induced_trivial() {
        // equal hom dimensions both ways, and the solver exhibits an
        // invertible intertwiner
        let s4 = FiniteGroup::symmetric_group(4).unwrap();
        let s3 = Subgroup::young(&s4, 3).unwrap();
        use rand::Rng;
        use rand::SeedableRng;
        for (p, k) in [(2u64, 1u32), (5, 1)] {
            let ctx = gf(p, k);
            let perm = Representation::permutation_rep(&s4, &s3, &ctx).unwrap();
            let ind = Representation::induce(
                &Representation::trivial(s3.group(), &ctx),
                &s3,
                256,
            )
            .unwrap();
            // both hom spaces have the same dimension (dim End = number of
            // double cosets), and the space contains an invertible element
            let forward = hom_dim(&perm, &ind).unwrap();
            assert_eq!(forward, hom_dim(&ind, &perm).unwrap());
            assert_eq!(forward, 2);
            let hs = hom_space(&perm, &ind).unwrap();
            let mut found = hs.basis().iter().any(|t| t.inverse().is_some());
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
            for _ in 0..100 {
                if found {
                    break;
                }
                let mut acc = MatrixFq::zero(&ctx, perm.dim(), perm.dim());
                for t in hs.basis() {
                    let c = rng.random_range(0..ctx.q() as u32);
                    if c != 0 {
                        acc = acc.add(&t.scalar_mul(c)).unwrap();
                    }
                }
                found = acc.inverse().is_some();
            }
            assert!(found, "an invertible intertwiner must exist");
        }
    }

    #[test]
    fn multiplicity_vector_counts_socle_multiplicities() {
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let ctx = gf(5, 1);
        let inventory = crate::meataxe::irreducible_inventory(&s3, &ctx, 42).unwrap();
        assert_eq!(inventory.dims(), vec![1, 1, 2]);

        // triv ⊕ triv: entry 2 at the trivial slot, zero elsewhere
        let triv = Representation::trivial(&s3, &ctx);
        let double = triv.direct_sum(&triv).unwrap();
        let mv = multiplicity_vector(&double, &inventory).unwrap();
        let ti = inventory.trivial_index();
        assert_eq!(mv[ti], 2);
        assert_eq!(mv.iter().sum::<usize>(), 2);

        // the regular module at a semisimple parameter: multiplicities
        // equal dimensions, so (1, 1, 2) in inventory order
        let reg = Representation::regular(&s3, &ctx).unwrap();
        let mv = multiplicity_vector(&reg, &inventory).unwrap();
        assert_eq!(mv, vec![1, 1, 2]);
        // identify the two linear slots: trivial by its images, the other
        // is the sign character
        let sgn = Representation::sign(&s3, &ctx).unwrap();
        for (i, simple) in inventory.representations().iter().enumerate() {
            if simple.dim() == 1 && i != ti {
                assert_eq!(hom_dim(&sgn, simple).unwrap(), 1);
            }
        }
    }

    #[test]
    fn hecke_of_s3_s2_trivial_has_dim_two_and_commutes() {
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let s2 = Subgroup::young(&s3, 2).unwrap();
        let ctx = gf(5, 1);
        let triv = Representation::trivial(s2.group(), &ctx);
        let hecke = hecke_algebra_convolution(&s3, &s2, &triv).unwrap();
        assert_eq!(hecke.dim(), 2);
        assert!(hecke.is_commutative());
    }

    #[test]
    fn hecke_of_full_subgroup_is_one_dimensional() {
        let s4 = FiniteGroup::symmetric_group(4).unwrap();
        let full = Subgroup::full(&s4).unwrap();
        let ctx = gf(3, 1);
        let triv = Representation::trivial(full.group(), &ctx);
        let hecke = hecke_algebra_convolution(&s4, &full, &triv).unwrap();
        assert_eq!(hecke.dim(), 1);
        assert!(hecke.is_commutative());
    }

    #[test]
    fn gelfand_graev_hecke_of_gl2_f3_over_gf4_has_dim_six() {
        let f3 = gf(3, 1);
        let gl23 = FiniteGroup::general_linear_group(2, &f3).unwrap();
        let u = Subgroup::unitriangular(&gl23).unwrap();
        let f4 = gf(2, 2);
        let eta = gelfand_graev_character_auto(&u, &f4).unwrap();
        let hecke = hecke_algebra_convolution(&gl23, &u, &eta).unwrap();
        assert_eq!(hecke.dim(), 6);
        assert!(hecke.is_commutative());

        // independent model: End_G(ind eta) has the same dimension
        let ind = Representation::induce(&eta, &u, DEFAULT_MAX_INDUCED_DIM).unwrap();
        assert_eq!(ind.dim(), 16);
        let end = end_algebra(&ind).unwrap();
        assert_eq!(end.dim(), 6);
        assert!(end.is_commutative());

        let iso = hecke_vs_end_iso_check(&hecke, &ind, &end).unwrap();
        assert!(iso.holds());
    }

    #[test]
    fn hecke_end_iso_certificates() {
        // (S_3, S_2, triv) over GF(5): both models dim 2
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let s2 = Subgroup::young(&s3, 2).unwrap();
        let ctx = gf(5, 1);
        let triv = Representation::trivial(s2.group(), &ctx);
        let hecke = hecke_algebra_convolution(&s3, &s2, &triv).unwrap();
        let ind = Representation::induce(&triv, &s2, 256).unwrap();
        let end = end_algebra(&ind).unwrap();
        let iso = hecke_vs_end_iso_check(&hecke, &ind, &end).unwrap();
        assert_eq!(iso.hecke_dim, 2);
        assert_eq!(iso.end_dim, 2);
        assert!(iso.holds());

        // (GL_2(F_2), U, eta_psi) over GF(3)
        let f2 = gf(2, 1);
        let gl22 = FiniteGroup::general_linear_group(2, &f2).unwrap();
        let u = Subgroup::unitriangular(&gl22).unwrap();
        let f3 = gf(3, 1);
        let eta = gelfand_graev_character_auto(&u, &f3).unwrap();
        let hecke = hecke_algebra_convolution(&gl22, &u, &eta).unwrap();
        let ind = Representation::induce(&eta, &u, 256).unwrap();
        let end = end_algebra(&ind).unwrap();
        let iso = hecke_vs_end_iso_check(&hecke, &ind, &end).unwrap();
        assert!(iso.holds());

        // (G, G, eta) for an absolutely irreducible eta: both sides dim 1
        let full = Subgroup::full(&gl22).unwrap();
        let nat = Representation::natural(full.group(), &f2).unwrap();
        let hecke = hecke_algebra_convolution(&gl22, &full, &nat).unwrap();
        assert_eq!(hecke.dim(), 1);
        let ind = Representation::induce(&nat, &full, 256).unwrap();
        let end = end_algebra(&ind).unwrap();
        let iso = hecke_vs_end_iso_check(&hecke, &ind, &end).unwrap();
        assert_eq!(iso.end_dim, 1);
        assert!(iso.holds());
    }

    #[test]
    fn convolution_is_well_defined_over_any_representative_system() {
        let s4 = FiniteGroup::symmetric_group(4).unwrap();
        let s3 = Subgroup::young(&s4, 3).unwrap();
        let ctx = gf(2, 1);
        let triv = Representation::trivial(s3.group(), &ctx);
        let hecke = hecke_algebra_convolution(&s4, &s3, &triv).unwrap();

        // reversed-order representatives, and shifted representatives
        let mut reversed = hecke.space().right_reps.clone();
        reversed.reverse();
        assert_eq!(hecke.structure_with_reps(&reversed).unwrap(), hecke.structure);

        let g = hecke.space().group().clone();
        let h = hecke.space().subgroup();
        let shifted: Vec<u32> = hecke
            .space()
            .right_reps
            .iter()
            .map(|&x| g.mul(h.to_parent(1 % h.order() as u32), x))
            .collect();
        assert_eq!(hecke.structure_with_reps(&shifted).unwrap(), hecke.structure);
    }

    #[test]
    fn gelfand_trick_on_young_pairs() {
        for n in [3usize, 4, 5] {
            let sn = FiniteGroup::symmetric_group(n).unwrap();
            let h = Subgroup::young(&sn, n - 1).unwrap();
            let ctx = gf(3, 1);
            let triv = Representation::trivial(h.group(), &ctx);
            let hecke = hecke_algebra_convolution(&sn, &h, &triv).unwrap();
            let inv = AntiInvolution::inversion(&sn);
            let report = check_gelfand_trick(&hecke, &inv).unwrap();
            assert!(report.pullback_fixed);
            assert!(report.hecke_commutative);
        }
    }

    #[test]
    fn hecke_unit_acts_as_identity() {
        let s4 = FiniteGroup::symmetric_group(4).unwrap();
        let s3 = Subgroup::young(&s4, 3).unwrap();
        let ctx = gf(7, 1);
        let triv = Representation::trivial(s3.group(), &ctx);
        let hecke = hecke_algebra_convolution(&s4, &s3, &triv).unwrap();
        let unit = hecke.space().unit();
        for b in hecke.basis() {
            let left = hecke.space().convolve(&unit, b);
            let right = hecke.space().convolve(b, &unit);
            assert_eq!(hecke.space().flatten(&left), hecke.space().flatten(b));
            assert_eq!(hecke.space().flatten(&right), hecke.space().flatten(b));
        }
    }

    #[test]
    fn frobenius_reciprocity_dimensions() {
        // dim Hom_G(ind eta, rho) = dim Hom_H(eta, res rho) and the
        // coinduction mirror, both sides solved independently
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let s2 = Subgroup::young(&s3, 2).unwrap();
        for ctx in [gf(2, 1), gf(3, 1), gf(5, 1)] {
            let etas = [
                Representation::trivial(s2.group(), &ctx),
                Representation::sign(s2.group(), &ctx).unwrap(),
            ];
            let rhos = [
                Representation::permutation_rep(&s3, &s2, &ctx).unwrap(),
                Representation::regular(&s3, &ctx).unwrap(),
                Representation::trivial(&s3, &ctx),
            ];
            for eta in &etas {
                let ind = Representation::induce(eta, &s2, 256).unwrap();
                for rho in &rhos {
                    let res = rho.restrict(&s2);
                    assert_eq!(
                        hom_dim(&ind, rho).unwrap(),
                        hom_dim(eta, &res).unwrap(),
                        "left adjunction failed"
                    );
                    let coind = Representation::coinduce(eta, &s2, 256).unwrap();
                    assert_eq!(
                        hom_dim(rho, &coind).unwrap(),
                        hom_dim(&res, eta).unwrap(),
                        "right adjunction failed"
                    );
                }
            }
        }
    }

    #[test]
    fn mackey_dimension_identity() {
        // dim res_H ind_H^G eta = sum over H\G/H of [H : H_s] dim eta
        let s4 = FiniteGroup::symmetric_group(4).unwrap();
        let h = Subgroup::young(&s4, 3).unwrap();
        let ctx = gf(3, 1);
        let eta = Representation::trivial(h.group(), &ctx);
        let ind = Representation::induce(&eta, &h, 256).unwrap();
        let res = ind.restrict(&h);
        let dcd = crate::groups::double_cosets(&s4, &h, &h);
        let mut total = 0usize;
        for &s in &dcd.representatives {
            let hs = h.conjugate_by(s).unwrap().intersect(&h).unwrap();
            total += (h.order() / hs.order()) * eta.dim();
        }
        assert_eq!(res.dim(), total);
    }

    #[test]
    fn dual_of_induced_matches_induced_dual_up_to_hom_profiles() {
        // dual(ind eta) and ind(dual eta) need not be equal as matrices,
        // but they have the same hom dimension against every irreducible
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let s2 = Subgroup::young(&s3, 2).unwrap();
        for (p, k) in [(2u64, 1u32), (3, 1), (5, 1)] {
            let ctx = gf(p, k);
            let inv = crate::meataxe::irreducible_inventory(&s3, &ctx, 42).unwrap();
            for eta in [
                Representation::trivial(s2.group(), &ctx),
                Representation::sign(s2.group(), &ctx).unwrap(),
            ] {
                let dual_ind = Representation::induce(&eta, &s2, 256).unwrap().dual();
                let ind_dual = Representation::induce(&eta.dual(), &s2, 256).unwrap();
                for simple in inv.representations() {
                    assert_eq!(
                        hom_dim(simple, &dual_ind).unwrap(),
                        hom_dim(simple, &ind_dual).unwrap()
                    );
                    assert_eq!(
                        hom_dim(&dual_ind, simple).unwrap(),
                        hom_dim(&ind_dual, simple).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn duality_swaps_hom_spaces() {
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let s2 = Subgroup::young(&s3, 2).unwrap();
        let ctx = gf(2, 1);
        let perm = Representation::permutation_rep(&s3, &s2, &ctx).unwrap();
        let reg = Representation::regular(&s3, &ctx).unwrap();
        let triv = Representation::trivial(&s3, &ctx);
        for (a, b) in [(&perm, &reg), (&triv, &perm), (&reg, &perm), (&triv, &reg)] {
            assert_eq!(
                hom_dim(a, b).unwrap(),
                hom_dim(&b.dual(), &a.dual()).unwrap()
            );
        }
    }
}
