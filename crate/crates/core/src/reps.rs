//! Matrix representations of enumerated groups and the functors on them:
//! restriction, induction (= coinduction for finite groups), duals, tensor
//! products, direct sums, permutation and regular modules, and the
//! character constructors (trivial, sign, additive unipotent twists,
//! multiplicative characters of cyclic subgroups).
//!
//! Images are materialized for every group element. Construction certifies
//! the homomorphism property: exhaustively over all pairs when the group is
//! small enough, otherwise on seeded random pairs with a cost-bounded
//! sample count.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::groups::{left_cosets, ElementRepr, FiniteGroup, Subgroup};
use crate::linalg::MatrixFq;
use rand::Rng;
use rand::SeedableRng;

pub const DEFAULT_MAX_INDUCED_DIM: usize = 256;
pub const MAX_REGULAR_ORDER: usize = 256;

#[derive(Clone)]
pub struct Representation {
    group: FiniteGroup,
    ctx: FieldCtx,
    dim: usize,
    images: std::sync::Arc<Vec<MatrixFq>>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Representation(dim {} of {} over {})", self.dim, self.group.name(), self.ctx)
    }
}

enum CertLevel {
    /// Pairwise products verified at the permutation level already;
    /// only identity/invertibility remain.
    PermVerified,
    /// Full matrix-level certification.
    Matrix,
}

impl Representation {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn image(&self, g: u32) -> &MatrixFq {
        &self.images[g as usize]
    }
    pub fn images(&self) -> &[MatrixFq] {
        &self.images
    }
    /// Images of the group's generators, in generator order.
    pub fn generator_images(&self) -> Vec<MatrixFq> {
        self.group.generators().iter().map(|&g| self.images[g as usize].clone()).collect()
    }

    fn certify(self, level: CertLevel) -> Result<Representation> {
        let n = self.group.order();
        let e = self.group.identity();
        if self.images[e as usize] != MatrixFq::identity(&self.ctx, self.dim) {
            return Err(Error::CertificationFailed("identity image is not the identity matrix".into()));
        }
        if matches!(level, CertLevel::PermVerified) {
            return Ok(self);
        }
        // invertibility via rho(g) rho(g^{-1}) = 1
        for g in 0..n as u32 {
            let prod = self.images[g as usize].mul(&self.images[self.group.inv(g) as usize])?;
            if prod != MatrixFq::identity(&self.ctx, self.dim) {
                return Err(Error::CertificationFailed("image of g * g^{-1} is not the identity".into()));
            }
        }
        // homomorphism property, exhaustive when affordable
        let dim3 = (self.dim as u64).pow(3).max(1);
        let full_cost = (n as u64) * (n as u64) * dim3;
        let check = |a: u32, b: u32| -> Result<bool> {
            let lhs = self.images[a as usize].mul(&self.images[b as usize])?;
            Ok(lhs == self.images[self.group.mul(a, b) as usize])
        };
        if n <= 300 && full_cost <= 200_000_000 {
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    if !check(a, b)? {
                        return Err(Error::CertificationFailed("homomorphism property failed".into()));
                    }
                }
            }
        } else {
            let samples = (200_000_000 / dim3).clamp(20, 10_000) as usize;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7265_7073);
            for _ in 0..samples {
                let a = rng.random_range(0..n as u32);
                let b = rng.random_range(0..n as u32);
                if !check(a, b)? {
                    return Err(Error::CertificationFailed("homomorphism property failed".into()));
                }
            }
        }
        Ok(self)
    }

    /// Builds a representation from generator images by multiplying out the
    /// BFS words of the group.
    pub fn from_generator_images(
        group: &FiniteGroup,
        ctx: &FieldCtx,
        gen_images: &[MatrixFq],
    ) -> Result<Representation> {
        assert_eq!(gen_images.len(), group.generators().len());
        let dim = gen_images.first().map_or(0, |m| m.rows());
        let mut images: Vec<Option<MatrixFq>> = vec![None; group.order()];
        images[group.identity() as usize] = Some(MatrixFq::identity(ctx, dim));
        // resolve each element by walking its word chain
        for g in 0..group.order() as u32 {
            if images[g as usize].is_some() {
                continue;
            }
            let mut chain = vec![g];
            let mut cur = g;
            while images[cur as usize].is_none() {
                let (_, parent) = group.word(cur).expect("non-identity element has a word");
                chain.push(parent);
                cur = parent;
            }
            chain.pop();
            for &x in chain.iter().rev() {
                let (gi, parent) = group.word(x).unwrap();
                let img = gen_images[gi as usize]
                    .mul(images[parent as usize].as_ref().unwrap())?;
                images[x as usize] = Some(img);
            }
        }
        let images: Vec<MatrixFq> = images.into_iter().map(|m| m.unwrap()).collect();
        Representation { group: group.clone(), ctx: ctx.clone(), dim, images: std::sync::Arc::new(images) }.certify(CertLevel::Matrix)
    }

    /// Builds a representation from a full image list (one per element).
    pub fn from_images(group: &FiniteGroup, ctx: &FieldCtx, images: Vec<MatrixFq>) -> Result<Representation> {
        assert_eq!(images.len(), group.order());
        let dim = images[0].rows();
        Representation { group: group.clone(), ctx: ctx.clone(), dim, images: std::sync::Arc::new(images) }.certify(CertLevel::Matrix)
    }

    /// Builds a permutation representation from an action map
    /// points[g][i] = g·i, verifying the action at the permutation level.
    pub fn from_perm_action(group: &FiniteGroup, ctx: &FieldCtx, action: &[Vec<u32>]) -> Result<Representation> {
        let n = group.order();
        assert_eq!(action.len(), n);
        let degree = action[0].len();
        // exhaustive composition check on the permutation level
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let ab = group.mul(a, b);
                for i in 0..degree {
                    if action[a as usize][action[b as usize][i] as usize] != action[ab as usize][i] {
                        return Err(Error::CertificationFailed("permutation action does not compose".into()));
                    }
                }
            }
        }
        let e = group.identity();
        if (0..degree).any(|i| action[e as usize][i] != i as u32) {
            return Err(Error::CertificationFailed("identity does not act trivially".into()));
        }
        let images = action
            .iter()
            .map(|perm| {
                let mut m = MatrixFq::zero(ctx, degree, degree);
                for (i, &img) in perm.iter().enumerate() {
                    m.set(img as usize, i, 1);
                }
                m
            })
            .collect();
        Representation { group: group.clone(), ctx: ctx.clone(), dim: degree, images: std::sync::Arc::new(images) }
            .certify(CertLevel::PermVerified)
    }

    pub fn trivial(group: &FiniteGroup, ctx: &FieldCtx) -> Representation {
        let images = vec![MatrixFq::identity(ctx, 1); group.order()];
        Representation { group: group.clone(), ctx: ctx.clone(), dim: 1, images: std::sync::Arc::new(images) }
    }

    /// The sign character of a permutation group.
    pub fn sign(group: &FiniteGroup, ctx: &FieldCtx) -> Result<Representation> {
        let images = (0..group.order() as u32)
            .map(|g| {
                let ElementRepr::Perm(p) = group.elem(g) else {
                    return Err(Error::Parse("sign character needs a permutation group".into()));
                };
                let val = if perm_is_even(p) { ctx.one() } else { ctx.from_int(-1) };
                Ok(MatrixFq::from_rows(ctx, &[vec![val.code()]]))
            })
            .collect::<Result<Vec<_>>>()?;
        Representation { group: group.clone(), ctx: ctx.clone(), dim: 1, images: std::sync::Arc::new(images) }.certify(CertLevel::Matrix)
    }

    /// G acting on the left cosets of h by permutation matrices.
    pub fn permutation_rep(g: &FiniteGroup, h: &Subgroup, ctx: &FieldCtx) -> Result<Representation> {
        assert!(g.same_group(h.parent()));
        let cosets = left_cosets(g, h);
        let action: Vec<Vec<u32>> = (0..g.order() as u32)
            .map(|x| {
                cosets
                    .representatives
                    .iter()
                    .map(|&t| cosets.membership[g.mul(x, t) as usize])
                    .collect()
            })
            .collect();
        Representation::from_perm_action(g, ctx, &action)
    }

    /// Left translation on the group itself.
    pub fn regular(g: &FiniteGroup, ctx: &FieldCtx) -> Result<Representation> {
        if g.order() > MAX_REGULAR_ORDER {
            return Err(Error::SizeCapExceeded(format!(
                "regular representation of order {} exceeds {}",
                g.order(),
                MAX_REGULAR_ORDER
            )));
        }
        let action: Vec<Vec<u32>> = (0..g.order() as u32)
            .map(|x| (0..g.order() as u32).map(|y| g.mul(x, y)).collect())
            .collect();
        Representation::from_perm_action(g, ctx, &action)
    }

    /// The defining matrix representation of a matrix group, over the
    /// group's own field or any extension sharing its prime field when the
    /// group is defined over the prime field.
    pub fn natural(g: &FiniteGroup, ctx: &FieldCtx) -> Result<Representation> {
        let mctx = g
            .mat_ctx()
            .ok_or_else(|| Error::Parse("natural representation needs a matrix group".into()))?;
        if !(mctx == ctx || (mctx.k() == 1 && mctx.p() == ctx.p())) {
            return Err(Error::CtxMismatch(mctx.to_string(), ctx.to_string()));
        }
        let images = (0..g.order() as u32)
            .map(|i| {
                let ElementRepr::Mat(m) = g.elem(i) else { unreachable!() };
                let mut out = MatrixFq::zero(ctx, m.rows(), m.cols());
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        out.set(r, c, m.get(r, c));
                    }
                }
                out
            })
            .collect();
        let dim = match g.elem(0) {
            ElementRepr::Mat(m) => m.rows(),
            _ => unreachable!(),
        };
        Representation { group: g.clone(), ctx: ctx.clone(), dim, images: std::sync::Arc::new(images) }.certify(CertLevel::Matrix)
    }

    /// Restriction to a subgroup; the result lives over the subgroup's own
    /// group view.
    pub fn restrict(&self, h: &Subgroup) -> Representation {
        assert!(self.group.same_group(h.parent()));
        let images = h.members().iter().map(|&p| self.images[p as usize].clone()).collect();
        Representation {
            group: h.group().clone(),
            ctx: self.ctx.clone(),
            dim: self.dim,
            images: std::sync::Arc::new(images),
        }
    }

    /// Induction from a subgroup, in the block-permutation model over fixed
    /// lowest-index left-coset representatives t_i: the image of g has block
    /// (s(i), i) equal to eta(t_{s(i)}^{-1} g t_i).
    pub fn induce(eta: &Representation, h: &Subgroup, max_dim: usize) -> Result<Representation> {
        assert!(eta.group.same_group(h.group()), "eta must be a representation of the subgroup view");
        let g = h.parent();
        let cosets = left_cosets(g, h);
        let m = cosets.representatives.len();
        let d = eta.dim;
        let dim = m * d;
        if dim > max_dim {
            return Err(Error::SizeCapExceeded(format!(
                "induced dimension {dim} exceeds cap {max_dim}"
            )));
        }
        let ctx = &eta.ctx;
        let mut images = Vec::with_capacity(g.order());
        for x in 0..g.order() as u32 {
            let mut img = MatrixFq::zero(ctx, dim, dim);
            for (i, &ti) in cosets.representatives.iter().enumerate() {
                let xi = g.mul(x, ti);
                let si = cosets.membership[xi as usize] as usize;
                let ts = cosets.representatives[si];
                let h_elt = g.mul(g.inv(ts), xi);
                let h_local = h
                    .from_parent(h_elt)
                    .expect("t_{s(i)}^{-1} g t_i lands in H");
                let block = eta.image(h_local);
                for r in 0..d {
                    for c in 0..d {
                        img.set(si * d + r, i * d + c, block.get(r, c));
                    }
                }
            }
            images.push(img);
        }
        Representation { group: g.clone(), ctx: ctx.clone(), dim, images: std::sync::Arc::new(images) }.certify(CertLevel::Matrix)
    }

    /// Coinduction. For finite groups the toolkit identifies coind with ind;
    /// both adjunction laws are exercised by tests rather than assumed.
    pub fn coinduce(eta: &Representation, h: &Subgroup, max_dim: usize) -> Result<Representation> {
        Representation::induce(eta, h, max_dim)
    }

    /// Contragredient: g maps to the inverse-transpose of its image.
    pub fn dual(&self) -> Representation {
        let images = (0..self.group.order() as u32)
            .map(|g| self.images[self.group.inv(g) as usize].transpose())
            .collect();
        Representation {
            group: self.group.clone(),
            ctx: self.ctx.clone(),
            dim: self.dim,
            images: std::sync::Arc::new(images),
        }
    }

    pub fn tensor(&self, other: &Representation) -> Result<Representation> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch(self.ctx.to_string(), other.ctx.to_string()));
        }
        let images = (0..self.group.order())
            .map(|g| self.images[g].kron(&other.images[g]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation {
            group: self.group.clone(),
            ctx: self.ctx.clone(),
            dim: self.dim * other.dim,
            images: std::sync::Arc::new(images),
        })
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch(self.ctx.to_string(), other.ctx.to_string()));
        }
        let dim = self.dim + other.dim;
        let images = (0..self.group.order())
            .map(|g| {
                let mut m = MatrixFq::zero(&self.ctx, dim, dim);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, self.images[g].get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, other.images[g].get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(Representation { group: self.group.clone(), ctx: self.ctx.clone(), dim, images: std::sync::Arc::new(images) })
    }
}

fn perm_is_even(p: &[u16]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0usize;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions.is_multiple_of(2)
}

/// The additive character twist on the unitriangular subgroup of gl(n, q):
/// a unitriangular matrix (x_ij) maps to zeta^lift(tr(sum_i x_{i,i+1}))
/// where the trace goes down to the prime field of the matrix entries and
/// zeta is an element of the representation field of multiplicative order
/// p = char(F_q). Multiplicativity is certified exhaustively over U.
pub fn gelfand_graev_character(u: &Subgroup, zeta: &FieldElement) -> Result<Representation> {
    let mctx = u
        .parent()
        .mat_ctx()
        .cloned()
        .ok_or_else(|| Error::Parse("the unipotent character twist needs a matrix group".into()))?;
    let p = mctx.p();
    let ctx = zeta.ctx().clone();
    if zeta.is_zero() || zeta.order() != p {
        return Err(Error::NoSuchRoot { order: p, q: ctx.q() });
    }
    let ug = u.group();
    let images = (0..ug.order() as u32)
        .map(|i| {
            let ElementRepr::Mat(m) = ug.elem(i) else {
                return Err(Error::Parse("unitriangular elements must be matrices".into()));
            };
            let mut s = mctx.zero();
            for r in 0..m.rows() - 1 {
                s = s.add(&mctx.el(m.get(r, r + 1)))?;
            }
            let lift = s.trace_to_prime().lift_prime()?;
            Ok(MatrixFq::from_rows(&ctx, &[vec![zeta.pow(lift).code()]]))
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::from_images(ug, &ctx, images)
}

/// Same twist with the root of unity chosen canonically from the
/// representation field; fails with NoSuchRoot when p does not divide q-1
/// (in particular in the equal-characteristic case, where only the trivial
/// character exists).
pub fn gelfand_graev_character_auto(u: &Subgroup, ctx: &FieldCtx) -> Result<Representation> {
    let p = u
        .parent()
        .mat_ctx()
        .map(|c| c.p())
        .ok_or_else(|| Error::Parse("the unipotent character twist needs a matrix group".into()))?;
    let zeta = ctx.root_of_unity(p)?;
    gelfand_graev_character(u, &zeta)
}

/// A multiplicative character of a cyclic subgroup: the canonical generator
/// c (lowest-index element of full order) maps to a root of unity of order
/// N/gcd(e, N), realizing c^j -> zeta_N^{e j}.
pub fn multiplicative_character(c: &Subgroup, ctx: &FieldCtx, exponent: u64) -> Result<Representation> {
    let cg = c.group();
    let n = cg.order() as u64;
    let gen = (0..cg.order() as u32)
        .find(|&i| cg.element_order(i) == n)
        .ok_or_else(|| Error::Parse(format!("subgroup of order {n} is not cyclic")))?;
    let g = gcd(exponent % n, n);
    let d = if exponent.is_multiple_of(n) { 1 } else { n / g };
    let xi = ctx.root_of_unity(d)?;
    let e_red = if exponent.is_multiple_of(n) { 0 } else { (exponent % n) / g };
    // map element -> discrete log with respect to the canonical generator
    let mut log = vec![u64::MAX; cg.order()];
    let mut x = cg.identity();
    for j in 0..n {
        log[x as usize] = j;
        x = cg.mul(gen, x);
    }
    let images = (0..cg.order())
        .map(|i| {
            let j = log[i];
            debug_assert!(j != u64::MAX);
            MatrixFq::from_rows(ctx, &[vec![xi.pow(e_red * j % d.max(1)).code()]])
        })
        .collect();
    Representation::from_images(cg, ctx, images)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Character constructors selectable from scenario files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharacterSpec {
    Trivial,
    Sign,
    /// Additive unipotent twist; the parameter is the multiplicative order
    /// of the root of unity, which must equal char(F_q).
    AdditiveGg { zeta_order: u64 },
    Multiplicative { exponent: u64 },
}

impl CharacterSpec {
    pub fn evaluate(&self, h: &Subgroup, ctx: &FieldCtx) -> Result<Representation> {
        match self {
            CharacterSpec::Trivial => Ok(Representation::trivial(h.group(), ctx)),
            CharacterSpec::Sign => Representation::sign(h.group(), ctx),
            CharacterSpec::AdditiveGg { zeta_order } => {
                let zeta = ctx.root_of_unity(*zeta_order)?;
                gelfand_graev_character(h, &zeta)
            }
            CharacterSpec::Multiplicative { exponent } => multiplicative_character(h, ctx, *exponent),
        }
    }
}
