//! Finite groups by full enumeration.
//!
//! Elements are canonical representations (permutation arrays, matrices over
//! a [`FieldCtx`], or tuples of factor indices) sorted lexicographically, so
//! every representative choice downstream is reproducible. Groups of order
//! at most 2048 carry a full multiplication table; larger groups (up to 10^5
//! elements) multiply on the fly through the element index.

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::linalg::MatrixFq;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Full multiplication tables are materialized up to this order.
pub const TABLE_CAP: usize = 2048;
/// Hard cap on element enumeration.
pub const ELEMENT_CAP: usize = 100_000;

#[derive(Clone, PartialEq, Eq)]
pub enum ElementRepr {
    /// Permutation of 0..n-1; entry i holds the image of i.
    Perm(Vec<u16>),
    /// Invertible matrix over the group's matrix context.
    Mat(MatrixFq),
    /// Component element indices into the factor groups.
    Tuple(Vec<u32>),
}

impl ElementRepr {
    fn key(&self) -> Vec<u32> {
        match self {
            ElementRepr::Perm(p) => p.iter().map(|&x| x as u32).collect(),
            ElementRepr::Mat(m) => m.entries().to_vec(),
            ElementRepr::Tuple(t) => t.clone(),
        }
    }
}

impl fmt::Debug for ElementRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementRepr::Perm(p) => write!(f, "perm{:?}", p),
            ElementRepr::Mat(m) => write!(f, "mat{:?}", m.entries()),
            ElementRepr::Tuple(t) => write!(f, "tuple{:?}", t),
        }
    }
}

struct GroupInner {
    name: String,
    elems: Vec<ElementRepr>,
    index: HashMap<Vec<u32>, u32>,
    factors: Vec<FiniteGroup>,
    mat_ctx: Option<FieldCtx>,
    perm_degree: Option<usize>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
    identity: u32,
    generators: Vec<u32>,
    /// BFS word data: element = gens[word.0] * elems[word.1]; None at identity.
    words: Vec<Option<(u32, u32)>>,
}

/// A fully enumerated finite group. Cheap to clone (shared immutable state);
/// two handles are the same group iff they share the same allocation.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupInner>);

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.0.name, self.order())
    }
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.0.elems.len()
    }
    pub fn name(&self) -> &str {
        &self.0.name
    }
    pub fn identity(&self) -> u32 {
        self.0.identity
    }
    pub fn generators(&self) -> &[u32] {
        &self.0.generators
    }
    pub fn elem(&self, i: u32) -> &ElementRepr {
        &self.0.elems[i as usize]
    }
    pub fn index_of(&self, r: &ElementRepr) -> Option<u32> {
        self.0.index.get(&r.key()).copied()
    }
    pub fn mat_ctx(&self) -> Option<&FieldCtx> {
        self.0.mat_ctx.as_ref()
    }
    pub fn perm_degree(&self) -> Option<usize> {
        self.0.perm_degree
    }
    pub fn factors(&self) -> &[FiniteGroup] {
        &self.0.factors
    }
    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Structural identity: same element list in the same canonical order.
    /// Sufficient for constructions (like the diagonal) that only match
    /// elements by index.
    pub fn same_elements(&self, other: &FiniteGroup) -> bool {
        self.same_group(other)
            || (self.order() == other.order()
                && self
                    .0
                    .elems
                    .iter()
                    .zip(&other.0.elems)
                    .all(|(a, b)| a.key() == b.key()))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.0.table {
            t[a as usize * self.order() + b as usize]
        } else {
            let r = self.compose(self.elem(a), self.elem(b));
            *self.0.index.get(&r.key()).expect("product escapes the element set")
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.0.inv[a as usize]
    }

    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    fn compose(&self, a: &ElementRepr, b: &ElementRepr) -> ElementRepr {
        match (a, b) {
            (ElementRepr::Perm(p), ElementRepr::Perm(q)) => {
                // (p·q)(i) = p(q(i))
                ElementRepr::Perm(q.iter().map(|&i| p[i as usize]).collect())
            }
            (ElementRepr::Mat(m), ElementRepr::Mat(n)) => {
                ElementRepr::Mat(m.mul(n).expect("matrix sizes agree"))
            }
            (ElementRepr::Tuple(s), ElementRepr::Tuple(t)) => ElementRepr::Tuple(
                s.iter()
                    .zip(t)
                    .zip(&self.0.factors)
                    .map(|((&x, &y), g)| g.mul(x, y))
                    .collect(),
            ),
            _ => unreachable!("mixed element representations"),
        }
    }

    fn invert_repr(&self, a: &ElementRepr) -> ElementRepr {
        match a {
            ElementRepr::Perm(p) => {
                let mut inv = vec![0u16; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u16;
                }
                ElementRepr::Perm(inv)
            }
            ElementRepr::Mat(m) => ElementRepr::Mat(m.inverse().expect("group elements are invertible")),
            ElementRepr::Tuple(t) => ElementRepr::Tuple(
                t.iter().zip(&self.0.factors).map(|(&x, g)| g.inv(x)).collect(),
            ),
        }
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut n = 1u64;
        while x != self.0.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u64 {
        let mut l = 1u64;
        for i in 0..self.order() as u32 {
            let o = self.element_order(i);
            l = l / gcd(l, o) * o;
        }
        l
    }

    pub fn conjugacy_class_count(&self) -> usize {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut count = 0;
        for start in 0..n as u32 {
            if assigned[start as usize] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            assigned[start as usize] = true;
            while let Some(x) = stack.pop() {
                for &g in &self.0.generators {
                    let y = self.conjugate(g, x);
                    if !assigned[y as usize] {
                        assigned[y as usize] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    /// Expresses g as image(word): identity for None, otherwise
    /// gens[gi] * word(parent). Used to materialize representations from
    /// generator images.
    pub fn word(&self, g: u32) -> Option<(u32, u32)> {
        self.0.words[g as usize]
    }

    // --- constructions ---

    fn build(
        name: String,
        mut elems: Vec<ElementRepr>,
        gen_reprs: Vec<ElementRepr>,
        factors: Vec<FiniteGroup>,
        mat_ctx: Option<FieldCtx>,
        perm_degree: Option<usize>,
    ) -> Result<FiniteGroup> {
        if elems.len() > ELEMENT_CAP {
            return Err(Error::SizeCapExceeded(format!(
                "group order {} exceeds element cap {}",
                elems.len(),
                ELEMENT_CAP
            )));
        }
        elems.sort_by_key(|a| a.key());
        elems.dedup_by(|a, b| a.key() == b.key());
        let mut index = HashMap::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            index.insert(e.key(), i as u32);
        }

        let mut inner = GroupInner {
            name,
            elems,
            index,
            factors,
            mat_ctx,
            perm_degree,
            table: None,
            inv: Vec::new(),
            identity: 0,
            generators: Vec::new(),
            words: Vec::new(),
        };
        let g = FiniteGroup(Arc::new(inner));
        // The handle above is only used for compose/invert during
        // construction; rebuild the Arc once the derived data is in place.
        let n = g.order();

        // identity: the unique e with e*e = e
        let mut identity = None;
        for i in 0..n as u32 {
            let r = g.compose(g.elem(i), g.elem(i));
            if g.index_of(&r) == Some(i) {
                identity = Some(i);
                break;
            }
        }
        let identity = identity.ok_or_else(|| Error::CertificationFailed("no identity found".into()))?;

        // inverses via direct repr inversion; also certifies inverse-closure
        let mut inv = Vec::with_capacity(n);
        for i in 0..n as u32 {
            let r = g.invert_repr(g.elem(i));
            let j = g
                .index_of(&r)
                .ok_or_else(|| Error::CertificationFailed("element set not closed under inverse".into()))?;
            inv.push(j);
        }

        // full table below the cap; certifies closure as a side effect
        let table = if n <= TABLE_CAP {
            let mut t = vec![0u32; n * n];
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    let r = g.compose(g.elem(a), g.elem(b));
                    let idx = g
                        .index_of(&r)
                        .ok_or_else(|| Error::CertificationFailed("element set not closed under product".into()))?;
                    t[a as usize * n + b as usize] = idx;
                }
            }
            Some(t)
        } else {
            None
        };

        inner = match Arc::try_unwrap(g.0) {
            Ok(inner) => inner,
            Err(_) => unreachable!("no other handles exist during construction"),
        };
        inner.identity = identity;
        inner.inv = inv;
        inner.table = table;
        let g = FiniteGroup(Arc::new(inner));

        // generators: map the provided reprs, then extend greedily (in
        // canonical order) until the BFS closure covers all of G
        let mut generators: Vec<u32> = Vec::new();
        for r in &gen_reprs {
            let i = g
                .index_of(r)
                .ok_or_else(|| Error::CertificationFailed("generator outside the element set".into()))?;
            if !generators.contains(&i) {
                generators.push(i);
            }
        }
        let mut words: Vec<Option<(u32, u32)>>;
        loop {
            words = vec![None; g.order()];
            let mut seen = vec![false; g.order()];
            seen[g.identity() as usize] = true;
            let mut queue = std::collections::VecDeque::from([g.identity()]);
            let mut count = 1;
            while let Some(x) = queue.pop_front() {
                for (gi, &gen) in generators.iter().enumerate() {
                    let y = g.mul(gen, x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        words[y as usize] = Some((gi as u32, x));
                        count += 1;
                        queue.push_back(y);
                    }
                }
            }
            if count == g.order() {
                break;
            }
            let next = (0..g.order() as u32)
                .find(|&i| !seen[i as usize])
                .expect("unreached element exists");
            generators.push(next);
        }

        let mut inner = match Arc::try_unwrap(g.0) {
            Ok(inner) => inner,
            Err(_) => unreachable!("no other handles exist during construction"),
        };
        inner.generators = generators;
        inner.words = words;
        let g = FiniteGroup(Arc::new(inner));
        g.audit_associativity()?;
        Ok(g)
    }

    /// Associativity audit: exhaustive for order <= 300, 10^4 random triples above.
    fn audit_associativity(&self) -> Result<()> {
        let n = self.order() as u32;
        let check = |a: u32, b: u32, c: u32| -> bool {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= 300 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::CertificationFailed("associativity audit failed".into()));
                        }
                    }
                }
            }
        } else {
            use rand::Rng;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6175_6469);
            for _ in 0..10_000 {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                let c = rng.random_range(0..n);
                if !check(a, b, c) {
                    return Err(Error::CertificationFailed("associativity audit failed".into()));
                }
            }
        }
        Ok(())
    }

    pub fn symmetric_group(n: usize) -> Result<FiniteGroup> {
        if !(2..=7).contains(&n) {
            return Err(Error::SizeCapExceeded(format!("sym({n}) outside 2..=7")));
        }
        let mut perms: Vec<Vec<u16>> = Vec::new();
        let mut cur: Vec<u16> = (0..n as u16).collect();
        heap_permutations(&mut cur, n, &mut perms);
        let elems = perms.into_iter().map(ElementRepr::Perm).collect();
        let mut swap: Vec<u16> = (0..n as u16).collect();
        swap.swap(0, 1);
        let cycle: Vec<u16> = (0..n as u16).map(|i| ((i as usize + 1) % n) as u16).collect();
        FiniteGroup::build(
            format!("sym({n})"),
            elems,
            vec![ElementRepr::Perm(swap), ElementRepr::Perm(cycle)],
            Vec::new(),
            None,
            Some(n),
        )
    }

    pub fn cyclic_group(n: usize) -> Result<FiniteGroup> {
        if n == 0 || n > TABLE_CAP {
            return Err(Error::SizeCapExceeded(format!("cyclic({n})")));
        }
        let rot: Vec<u16> = (0..n as u16).map(|i| ((i as usize + 1) % n) as u16).collect();
        let mut elems = Vec::with_capacity(n);
        let mut cur: Vec<u16> = (0..n as u16).collect();
        for _ in 0..n {
            elems.push(ElementRepr::Perm(cur.clone()));
            cur = cur.iter().map(|&i| rot[i as usize]).collect();
        }
        FiniteGroup::build(
            format!("cyclic({n})"),
            elems,
            vec![ElementRepr::Perm(rot)],
            Vec::new(),
            None,
            Some(n),
        )
    }

    /// Symmetries of the regular n-gon, order 2n.
    pub fn dihedral_group(n: usize) -> Result<FiniteGroup> {
        if n < 2 || 2 * n > TABLE_CAP {
            return Err(Error::SizeCapExceeded(format!("dihedral({n})")));
        }
        let rot: Vec<u16> = (0..n as u16).map(|i| ((i as usize + 1) % n) as u16).collect();
        let refl: Vec<u16> = (0..n as u16).map(|i| ((n - i as usize) % n) as u16).collect();
        let mut elems = Vec::new();
        let mut cur: Vec<u16> = (0..n as u16).collect();
        for _ in 0..n {
            elems.push(ElementRepr::Perm(cur.clone()));
            let reflected: Vec<u16> = cur.iter().map(|&i| refl[i as usize]).collect();
            elems.push(ElementRepr::Perm(reflected));
            cur = cur.iter().map(|&i| rot[i as usize]).collect();
        }
        FiniteGroup::build(
            format!("dihedral({n})"),
            elems,
            vec![ElementRepr::Perm(rot), ElementRepr::Perm(refl)],
            Vec::new(),
            None,
            Some(n),
        )
    }

    /// The quaternion group of order 8, realized inside GL_2(F_3).
    pub fn quaternion8() -> Result<FiniteGroup> {
        let f3 = FieldCtx::new(3, 1)?;
        let i = MatrixFq::from_ints(&f3, &[vec![0, -1], vec![1, 0]]);
        let j = MatrixFq::from_ints(&f3, &[vec![1, 1], vec![1, -1]]);
        let elems = closure_of_matrices(&[i.clone(), j.clone()]);
        assert_eq!(elems.len(), 8);
        FiniteGroup::build(
            "quaternion8".into(),
            elems.into_iter().map(ElementRepr::Mat).collect(),
            vec![ElementRepr::Mat(i), ElementRepr::Mat(j)],
            Vec::new(),
            Some(f3),
            None,
        )
    }

    pub fn general_linear_group(n: usize, ctx: &FieldCtx) -> Result<FiniteGroup> {
        let q = ctx.q();
        let ok = (n == 2 && q <= 7) || (n == 3 && q == 2);
        if !ok {
            return Err(Error::SizeCapExceeded(format!("gl({n}) over field of size {q}")));
        }
        let cells = n * n;
        let total = q.pow(cells as u32);
        let mut elems = Vec::new();
        for code in 0..total {
            let mut digits = Vec::with_capacity(cells);
            let mut m = code;
            for _ in 0..cells {
                digits.push((m % q) as u32);
                m /= q;
            }
            let mat = MatrixFq::from_fn(ctx, n, n, |i, j| digits[i * n + j]);
            if mat.rank() == n {
                elems.push(ElementRepr::Mat(mat));
            }
        }
        let expected: u64 = (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product();
        if elems.len() as u64 != expected {
            return Err(Error::CertificationFailed(format!(
                "gl order {} does not match the product formula {}",
                elems.len(),
                expected
            )));
        }
        FiniteGroup::build(
            format!("gl({n},{},{})", ctx.p(), ctx.k()),
            elems,
            Vec::new(), // canonical greedy generators
            Vec::new(),
            Some(ctx.clone()),
            None,
        )
    }

    /// Direct product with componentwise multiplication.
    pub fn product_group(factors: &[FiniteGroup]) -> Result<FiniteGroup> {
        assert!(factors.len() >= 2);
        let order: usize = factors.iter().map(|g| g.order()).product();
        if order > ELEMENT_CAP {
            return Err(Error::SizeCapExceeded(format!("product order {order} exceeds {ELEMENT_CAP}")));
        }
        let mut elems: Vec<ElementRepr> = vec![ElementRepr::Tuple(Vec::new())];
        for g in factors {
            let mut next = Vec::with_capacity(elems.len() * g.order());
            for e in &elems {
                let ElementRepr::Tuple(t) = e else { unreachable!() };
                for i in 0..g.order() as u32 {
                    let mut t2 = t.clone();
                    t2.push(i);
                    next.push(ElementRepr::Tuple(t2));
                }
            }
            elems = next;
        }
        // generators: component generators embedded with identity elsewhere
        let mut gens = Vec::new();
        for (fi, g) in factors.iter().enumerate() {
            for &gen in g.generators() {
                let t: Vec<u32> = factors
                    .iter()
                    .enumerate()
                    .map(|(fj, h)| if fi == fj { gen } else { h.identity() })
                    .collect();
                gens.push(ElementRepr::Tuple(t));
            }
        }
        let name = format!(
            "prod({})",
            factors.iter().map(|g| g.name().to_string()).collect::<Vec<_>>().join(",")
        );
        FiniteGroup::build(name, elems, gens, factors.to_vec(), None, None)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn heap_permutations(cur: &mut Vec<u16>, k: usize, out: &mut Vec<Vec<u16>>) {
    if k == 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(cur, k - 1, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

fn closure_of_matrices(gens: &[MatrixFq]) -> Vec<MatrixFq> {
    let mut seen: HashMap<Vec<u32>, MatrixFq> = HashMap::new();
    let id = MatrixFq::identity(gens[0].ctx(), gens[0].rows());
    seen.insert(id.entries().to_vec(), id.clone());
    let mut queue = vec![id];
    while let Some(m) = queue.pop() {
        for g in gens {
            let next = g.mul(&m).expect("sizes agree");
            let key = next.entries().to_vec();
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(next.clone());
                queue.push(next);
            }
        }
    }
    let mut out: Vec<MatrixFq> = seen.into_values().collect();
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    out
}

/// A subgroup of a parent group, carrying both the parent indexing and its
/// own [`FiniteGroup`] view.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<u32>,
    group: FiniteGroup,
    from_parent: HashMap<u32, u32>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.members.len(), self.parent.name())
    }
}

impl Subgroup {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }
    /// Sorted parent indices of the members.
    pub fn members(&self) -> &[u32] {
        &self.members
    }
    /// The subgroup as a group in its own right; element i corresponds to
    /// parent index members()[i].
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn order(&self) -> usize {
        self.members.len()
    }
    pub fn to_parent(&self, i: u32) -> u32 {
        self.members[i as usize]
    }
    pub fn from_parent(&self, p: u32) -> Option<u32> {
        self.from_parent.get(&p).copied()
    }
    pub fn contains(&self, p: u32) -> bool {
        self.from_parent.contains_key(&p)
    }
    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn from_generators(parent: &FiniteGroup, gens: &[u32]) -> Result<Subgroup> {
        assert!(!gens.is_empty(), "need at least one generator");
        let mut seen = vec![false; parent.order()];
        seen[parent.identity() as usize] = true;
        let mut queue = vec![parent.identity()];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = parent.mul(g, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        let members: Vec<u32> = (0..parent.order() as u32).filter(|&i| seen[i as usize]).collect();
        Subgroup::from_members_unchecked(parent, members, gens)
    }

    /// Builds a subgroup from an explicit member set, verifying closure
    /// under products and inverses.
    pub fn from_members(parent: &FiniteGroup, members: Vec<u32>) -> Result<Subgroup> {
        let set: std::collections::HashSet<u32> = members.iter().copied().collect();
        if !set.contains(&parent.identity()) {
            return Err(Error::CertificationFailed("member set lacks the identity".into()));
        }
        for &a in &members {
            if !set.contains(&parent.inv(a)) {
                return Err(Error::CertificationFailed("member set not closed under inverse".into()));
            }
            for &b in &members {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::CertificationFailed("member set not closed under product".into()));
                }
            }
        }
        Subgroup::from_members_unchecked(parent, members, &[])
    }

    fn from_members_unchecked(parent: &FiniteGroup, mut members: Vec<u32>, gens: &[u32]) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if !parent.order().is_multiple_of(members.len()) {
            return Err(Error::CertificationFailed("Lagrange violation in subgroup".into()));
        }
        let elems: Vec<ElementRepr> = members.iter().map(|&i| parent.elem(i).clone()).collect();
        let gen_reprs: Vec<ElementRepr> = gens.iter().map(|&i| parent.elem(i).clone()).collect();
        let group = FiniteGroup::build(
            format!("{}[sub{}]", parent.name(), members.len()),
            elems,
            gen_reprs,
            parent.factors().to_vec(),
            parent.mat_ctx().cloned(),
            parent.perm_degree(),
        )?;
        let mut from_parent = HashMap::with_capacity(members.len());
        // build() sorts canonically, which preserves the sorted-member order
        // because parent element order is also canonical
        for (i, &p) in members.iter().enumerate() {
            from_parent.insert(p, i as u32);
            debug_assert_eq!(group.elem(i as u32).key(), parent.elem(p).key());
        }
        Ok(Subgroup { parent: parent.clone(), members, group, from_parent })
    }

    /// The whole group as a subgroup of itself.
    pub fn full(parent: &FiniteGroup) -> Result<Subgroup> {
        Subgroup::from_members_unchecked(
            parent,
            (0..parent.order() as u32).collect(),
            parent.generators(),
        )
    }

    /// The trivial subgroup {e}.
    pub fn trivial(parent: &FiniteGroup) -> Result<Subgroup> {
        Subgroup::from_members_unchecked(parent, vec![parent.identity()], &[parent.identity()])
    }

    /// Permutations moving only the first k letters inside sym(n).
    pub fn young(parent: &FiniteGroup, k: usize) -> Result<Subgroup> {
        let n = parent
            .perm_degree()
            .ok_or_else(|| Error::Parse("young(k) needs a permutation group".into()))?;
        if k > n {
            return Err(Error::Parse(format!("young({k}) inside degree-{n} group")));
        }
        let members: Vec<u32> = (0..parent.order() as u32)
            .filter(|&i| {
                let ElementRepr::Perm(p) = parent.elem(i) else { return false };
                (k..n).all(|j| p[j] as usize == j)
            })
            .collect();
        Subgroup::from_members(parent, members)
    }

    /// Upper unitriangular matrices inside gl(n, q).
    pub fn unitriangular(parent: &FiniteGroup) -> Result<Subgroup> {
        let members: Vec<u32> = (0..parent.order() as u32)
            .filter(|&i| {
                let ElementRepr::Mat(m) = parent.elem(i) else { return false };
                (0..m.rows()).all(|r| {
                    (0..=r).all(|c| m.get(r, c) == if r == c { 1 } else { 0 })
                })
            })
            .collect();
        if members.is_empty() {
            return Err(Error::Parse("unitriangular needs a matrix group".into()));
        }
        Subgroup::from_members(parent, members)
    }

    /// Upper triangular invertible matrices (the Borel subgroup) of gl(n, q).
    pub fn borel(parent: &FiniteGroup) -> Result<Subgroup> {
        let members: Vec<u32> = (0..parent.order() as u32)
            .filter(|&i| {
                let ElementRepr::Mat(m) = parent.elem(i) else { return false };
                (0..m.rows()).all(|r| (0..r).all(|c| m.get(r, c) == 0))
            })
            .collect();
        if members.is_empty() {
            return Err(Error::Parse("borel needs a matrix group".into()));
        }
        Subgroup::from_members(parent, members)
    }

    /// The nonsplit Cartan subgroup of gl(2, q) for odd q: matrices
    /// [[a, b*z], [b, a]] with (a, b) != (0, 0) and z the canonical
    /// generator of the multiplicative group. Isomorphic to F_{q^2}^*.
    pub fn cartan(parent: &FiniteGroup) -> Result<Subgroup> {
        let ctx = parent
            .mat_ctx()
            .ok_or_else(|| Error::Parse("cartan needs a matrix group".into()))?
            .clone();
        if ctx.p() == 2 {
            return Err(Error::Parse("the nonsplit Cartan construction needs odd q".into()));
        }
        let z = ctx.generator().code();
        let members: Vec<u32> = (0..parent.order() as u32)
            .filter(|&i| {
                let ElementRepr::Mat(m) = parent.elem(i) else { return false };
                m.rows() == 2
                    && m.get(0, 0) == m.get(1, 1)
                    && m.get(0, 1) == ctx.mul_codes(m.get(1, 0), z)
            })
            .collect();
        let sub = Subgroup::from_members(parent, members)?;
        if sub.order() as u64 != ctx.q() * ctx.q() - 1 {
            return Err(Error::CertificationFailed(format!(
                "cartan subgroup has order {}, expected q^2-1 = {}",
                sub.order(),
                ctx.q() * ctx.q() - 1
            )));
        }
        Ok(sub)
    }

    /// The diagonal {(x, ..., x)} inside a product of identical factors.
    pub fn diagonal(product: &FiniteGroup) -> Result<Subgroup> {
        let factors = product.factors();
        if factors.len() < 2 {
            return Err(Error::Parse("diag needs a product group".into()));
        }
        let f0 = &factors[0];
        for f in factors {
            if !f.same_elements(f0) {
                return Err(Error::Parse("diag needs identical product factors".into()));
            }
        }
        let members: Vec<u32> = (0..product.order() as u32)
            .filter(|&i| {
                let ElementRepr::Tuple(t) = product.elem(i) else { return false };
                t.iter().all(|&x| x == t[0])
            })
            .collect();
        Subgroup::from_members(product, members)
    }

    /// The center {x : xg = gx for all g}.
    pub fn center(parent: &FiniteGroup) -> Result<Subgroup> {
        let members: Vec<u32> = (0..parent.order() as u32)
            .filter(|&x| {
                parent
                    .generators()
                    .iter()
                    .all(|&g| parent.mul(x, g) == parent.mul(g, x))
            })
            .collect();
        Subgroup::from_members(parent, members)
    }

    /// sHs^{-1} as a subgroup of the same parent.
    pub fn conjugate_by(&self, s: u32) -> Result<Subgroup> {
        let members: Vec<u32> = self
            .members
            .iter()
            .map(|&x| self.parent.conjugate(s, x))
            .collect();
        Subgroup::from_members_unchecked(&self.parent, members, &[])
    }

    /// Intersection with another subgroup of the same parent.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        assert!(self.parent.same_group(&other.parent));
        let members: Vec<u32> = self
            .members
            .iter()
            .copied()
            .filter(|i| other.contains(*i))
            .collect();
        Subgroup::from_members_unchecked(&self.parent, members, &[])
    }
}

/// Left cosets xH (or right cosets Hx) of a subgroup: lowest-index
/// representatives in ascending order plus a membership map.
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    pub representatives: Vec<u32>,
    /// element index -> position of its coset representative
    pub membership: Vec<u32>,
}

pub fn left_cosets(g: &FiniteGroup, h: &Subgroup) -> CosetDecomposition {
    cosets_impl(g, h, true)
}

pub fn right_cosets(g: &FiniteGroup, h: &Subgroup) -> CosetDecomposition {
    cosets_impl(g, h, false)
}

fn cosets_impl(g: &FiniteGroup, h: &Subgroup, left: bool) -> CosetDecomposition {
    let n = g.order();
    let mut membership = vec![u32::MAX; n];
    let mut representatives = Vec::with_capacity(n / h.order());
    for x in 0..n as u32 {
        if membership[x as usize] != u32::MAX {
            continue;
        }
        let pos = representatives.len() as u32;
        representatives.push(x);
        for &m in h.members() {
            let y = if left { g.mul(x, m) } else { g.mul(m, x) };
            membership[y as usize] = pos;
        }
    }
    CosetDecomposition { representatives, membership }
}

/// Partition of G into H x K double cosets with lowest-index representatives.
#[derive(Debug, Clone)]
pub struct DoubleCosetDecomposition {
    pub representatives: Vec<u32>,
    /// element index -> position of its double-coset representative
    pub membership: Vec<u32>,
    pub sizes: Vec<usize>,
}

pub fn double_cosets(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> DoubleCosetDecomposition {
    assert!(g.same_group(h.parent()) && g.same_group(k.parent()));
    let n = g.order();
    let mut membership = vec![u32::MAX; n];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    for x in 0..n as u32 {
        if membership[x as usize] != u32::MAX {
            continue;
        }
        let pos = representatives.len() as u32;
        representatives.push(x);
        // orbit of x under left H- and right K-multiplication
        let mut stack = vec![x];
        membership[x as usize] = pos;
        let mut size = 1usize;
        while let Some(y) = stack.pop() {
            for &hm in h.group().generators() {
                let z = g.mul(h.to_parent(hm), y);
                if membership[z as usize] == u32::MAX {
                    membership[z as usize] = pos;
                    size += 1;
                    stack.push(z);
                }
            }
            for &km in k.group().generators() {
                let z = g.mul(y, k.to_parent(km));
                if membership[z as usize] == u32::MAX {
                    membership[z as usize] = pos;
                    size += 1;
                    stack.push(z);
                }
            }
        }
        sizes.push(size);
    }
    DoubleCosetDecomposition { representatives, membership, sizes }
}

/// An anti-involution of a group: a bijection with i(gh) = i(h)i(g) and
/// i(i(g)) = g, certified at construction.
#[derive(Clone)]
pub struct AntiInvolution {
    group: FiniteGroup,
    images: Vec<u32>,
}

impl AntiInvolution {
    pub fn apply(&self, g: u32) -> u32 {
        self.images[g as usize]
    }
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn from_images(group: &FiniteGroup, images: Vec<u32>) -> Result<AntiInvolution> {
        assert_eq!(images.len(), group.order());
        let n = group.order() as u32;
        for g in 0..n {
            if images[images[g as usize] as usize] != g {
                return Err(Error::CertificationFailed("map is not an involution".into()));
            }
        }
        // anti-homomorphism check: exhaustive within the table cap, else on
        // 10^4 sampled pairs (the named constructors hold by algebra anyway)
        let check = |a: u32, b: u32| -> bool {
            images[group.mul(a, b) as usize] == group.mul(images[b as usize], images[a as usize])
        };
        if group.order() <= TABLE_CAP {
            for a in 0..n {
                for b in 0..n {
                    if !check(a, b) {
                        return Err(Error::CertificationFailed("map is not an anti-homomorphism".into()));
                    }
                }
            }
        } else {
            use rand::Rng;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x616e_7469);
            for _ in 0..10_000 {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                if !check(a, b) {
                    return Err(Error::CertificationFailed("map is not an anti-homomorphism".into()));
                }
            }
        }
        Ok(AntiInvolution { group: group.clone(), images })
    }

    /// g -> g^{-1}: an anti-involution of every group.
    pub fn inversion(group: &FiniteGroup) -> AntiInvolution {
        let images = (0..group.order() as u32).map(|i| group.inv(i)).collect();
        AntiInvolution { group: group.clone(), images }
    }

    /// g -> g^T for matrix groups closed under transposition.
    pub fn transpose(group: &FiniteGroup) -> Result<AntiInvolution> {
        let mut images = Vec::with_capacity(group.order());
        for i in 0..group.order() as u32 {
            let ElementRepr::Mat(m) = group.elem(i) else {
                return Err(Error::Parse("transpose anti-involution needs a matrix group".into()));
            };
            let t = ElementRepr::Mat(m.transpose());
            let j = group
                .index_of(&t)
                .ok_or_else(|| Error::CertificationFailed("group not closed under transpose".into()))?;
            images.push(j);
        }
        AntiInvolution::from_images(group, images)
    }

    /// True iff i(HgH) = HgH for every double coset, decided by checking
    /// every element against the membership map.
    pub fn preserves_double_cosets(&self, d: &DoubleCosetDecomposition) -> bool {
        (0..self.group.order() as u32)
            .all(|x| d.membership[self.apply(x) as usize] == d.membership[x as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(FiniteGroup::symmetric_group(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric_group(4).unwrap().order(), 24);
        let s5 = FiniteGroup::symmetric_group(5).unwrap();
        assert_eq!(s5.order(), 120);
        assert_eq!(s5.conjugacy_class_count(), 7);
        assert!(FiniteGroup::symmetric_group(8).is_err());
    }

    #[test]
    fn gl_orders_match_product_formula() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let f3 = FieldCtx::new(3, 1).unwrap();
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(FiniteGroup::general_linear_group(2, &f2).unwrap().order(), 6);
        assert_eq!(FiniteGroup::general_linear_group(2, &f3).unwrap().order(), 48);
        assert_eq!(FiniteGroup::general_linear_group(2, &f5).unwrap().order(), 480);
        let f11 = FieldCtx::new(11, 1).unwrap();
        assert!(FiniteGroup::general_linear_group(2, &f11).is_err());
    }

    #[test]
    fn subgroup_closures() {
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        // <(1 2)>
        let swap = s3
            .index_of(&ElementRepr::Perm(vec![1, 0, 2]))
            .unwrap();
        let sub = Subgroup::from_generators(&s3, &[swap]).unwrap();
        assert_eq!(sub.order(), 2);

        let f3 = FieldCtx::new(3, 1).unwrap();
        let gl23 = FiniteGroup::general_linear_group(2, &f3).unwrap();
        let u = Subgroup::unitriangular(&gl23).unwrap();
        assert_eq!(u.order(), 3);
        let c = Subgroup::cartan(&gl23).unwrap();
        assert_eq!(c.order(), 8);
        let b = Subgroup::borel(&gl23).unwrap();
        assert_eq!(b.order(), 12);
    }

    #[test]
    fn lagrange_holds_for_named_subgroups() {
        let s4 = FiniteGroup::symmetric_group(4).unwrap();
        for k in 1..=4 {
            let sub = Subgroup::young(&s4, k).unwrap();
            assert_eq!(s4.order() % sub.order(), 0);
        }
        let q8 = FiniteGroup::quaternion8().unwrap();
        assert_eq!(q8.order(), 8);
        let z = Subgroup::center(&q8).unwrap();
        assert_eq!(z.order(), 2);
    }

    #[test]
    fn product_and_diagonal() {
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let prod = FiniteGroup::product_group(&[s3.clone(), s3.clone()]).unwrap();
        assert_eq!(prod.order(), 36);
        let diag = Subgroup::diagonal(&prod).unwrap();
        assert_eq!(diag.order(), 6);

        // diagonal view is isomorphic to the factor via the index bijection
        let dg = diag.group();
        for a in 0..6u32 {
            for b in 0..6u32 {
                let ElementRepr::Tuple(ta) = dg.elem(a) else { panic!() };
                let ElementRepr::Tuple(tb) = dg.elem(b) else { panic!() };
                let ElementRepr::Tuple(tab) = dg.elem(dg.mul(a, b)) else { panic!() };
                assert_eq!(s3.mul(ta[0], tb[0]), tab[0]);
            }
        }

        let q8 = FiniteGroup::quaternion8().unwrap();
        let q83 = FiniteGroup::product_group(&[q8.clone(), q8.clone(), q8.clone()]).unwrap();
        assert_eq!(q83.order(), 512);
        assert_eq!(Subgroup::diagonal(&q83).unwrap().order(), 8);
    }

    #[test]
    fn double_coset_examples() {
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let swap = s3.index_of(&ElementRepr::Perm(vec![1, 0, 2])).unwrap();
        let h = Subgroup::from_generators(&s3, &[swap]).unwrap();
        let d = double_cosets(&s3, &h, &h);
        assert_eq!(d.representatives.len(), 2);
        let mut sizes = d.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4]);
        assert_eq!(d.sizes.iter().sum::<usize>(), 6);

        let full = Subgroup::full(&s3).unwrap();
        assert_eq!(double_cosets(&s3, &full, &full).representatives.len(), 1);

        let triv = Subgroup::trivial(&s3).unwrap();
        assert_eq!(double_cosets(&s3, &triv, &triv).representatives.len(), 6);
    }

    #[test]
    fn diagonal_double_cosets_count_classes() {
        // (S_3 x S_3, diag) has as many double cosets as S_3 has classes
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let prod = FiniteGroup::product_group(&[s3.clone(), s3.clone()]).unwrap();
        let diag = Subgroup::diagonal(&prod).unwrap();
        let d = double_cosets(&prod, &diag, &diag);
        assert_eq!(d.representatives.len(), s3.conjugacy_class_count());
        assert_eq!(d.representatives.len(), 3);
    }

    #[test]
    fn inversion_preserves_young_double_cosets() {
        for n in [3, 4, 5] {
            let sn = FiniteGroup::symmetric_group(n).unwrap();
            let h = Subgroup::young(&sn, n - 1).unwrap();
            let d = double_cosets(&sn, &h, &h);
            let inv = AntiInvolution::inversion(&sn);
            assert!(inv.preserves_double_cosets(&d));
        }
    }

    #[test]
    fn inversion_double_coset_preservation_on_abelian_groups() {
        // preserved iff x^2 lands in H for every x; holds when G/H has
        // exponent 2, fails for C_12 with an index-4 subgroup
        let c12 = FiniteGroup::cyclic_group(12).unwrap();
        let inv = AntiInvolution::inversion(&c12);
        let shift = |k: usize| {
            ElementRepr::Perm((0..12).map(|i| ((i + k) % 12) as u16).collect())
        };
        let h2 = Subgroup::from_generators(&c12, &[c12.index_of(&shift(2)).unwrap()]).unwrap();
        assert!(inv.preserves_double_cosets(&double_cosets(&c12, &h2, &h2)));
        let h3 = Subgroup::from_generators(&c12, &[c12.index_of(&shift(3)).unwrap()]).unwrap();
        assert!(!inv.preserves_double_cosets(&double_cosets(&c12, &h3, &h3)));

        // exponent-2 group: inversion is the identity map
        let c2 = FiniteGroup::cyclic_group(2).unwrap();
        let klein = FiniteGroup::product_group(&[c2.clone(), c2.clone()]).unwrap();
        let inv = AntiInvolution::inversion(&klein);
        let triv = Subgroup::trivial(&klein).unwrap();
        assert!(inv.preserves_double_cosets(&double_cosets(&klein, &triv, &triv)));
    }

    #[test]
    fn transpose_double_coset_checks() {
        // In GL_2(F_3) with the diagonal torus T, T·u·T for unipotent u is
        // entirely upper triangular while u^T is lower triangular, so the
        // transpose does not preserve that double coset. Frozen against the
        // brute-force membership sweep below.
        let f3 = FieldCtx::new(3, 1).unwrap();
        let gl23 = FiniteGroup::general_linear_group(2, &f3).unwrap();
        let members: Vec<u32> = (0..gl23.order() as u32)
            .filter(|&i| {
                let ElementRepr::Mat(m) = gl23.elem(i) else { return false };
                m.get(0, 1) == 0 && m.get(1, 0) == 0
            })
            .collect();
        let torus = Subgroup::from_members(&gl23, members).unwrap();
        assert_eq!(torus.order(), 4);
        let d = double_cosets(&gl23, &torus, &torus);
        let t = AntiInvolution::transpose(&gl23).unwrap();
        let fast = t.preserves_double_cosets(&d);
        let brute = (0..gl23.order() as u32).all(|x| {
            let tx = t.apply(x);
            d.membership[tx as usize] == d.membership[x as usize]
        });
        assert_eq!(fast, brute);
        assert!(!fast);

        // The quaternion group inside GL_2(F_3) is transpose-stable and the
        // center's double cosets {x, -x} are preserved.
        let q8 = FiniteGroup::quaternion8().unwrap();
        let z = Subgroup::center(&q8).unwrap();
        let d = double_cosets(&q8, &z, &z);
        let t = AntiInvolution::transpose(&q8).unwrap();
        assert!(t.preserves_double_cosets(&d));
    }

    #[test]
    fn double_coset_sizes_partition_the_group() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let gl23 = FiniteGroup::general_linear_group(2, &f3).unwrap();
        let u = Subgroup::unitriangular(&gl23).unwrap();
        let d = double_cosets(&gl23, &u, &u);
        assert_eq!(d.sizes.iter().sum::<usize>(), gl23.order());
        // representatives are lowest-index in their coset
        for (pos, &rep) in d.representatives.iter().enumerate() {
            for x in 0..gl23.order() as u32 {
                if d.membership[x as usize] == pos as u32 {
                    assert!(rep <= x);
                }
            }
        }
    }

    #[test]
    fn mackey_subgroups_are_subgroups() {
        let s4 = FiniteGroup::symmetric_group(4).unwrap();
        let h = Subgroup::young(&s4, 3).unwrap();
        let d = double_cosets(&s4, &h, &h);
        for &s in &d.representatives {
            let hs = h.conjugate_by(s).unwrap().intersect(&h).unwrap();
            assert_eq!(h.order() % hs.order(), 0);
        }
    }

    #[test]
    fn element_orders_and_exponent() {
        let q8 = FiniteGroup::quaternion8().unwrap();
        let mut orders: Vec<u64> = (0..8).map(|i| q8.element_order(i)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(q8.exponent(), 4);

        let gl23 = FiniteGroup::general_linear_group(2, &FieldCtx::new(3, 1).unwrap()).unwrap();
        assert_eq!(gl23.exponent(), 24);
    }

    #[test]
    fn words_reconstruct_elements() {
        let s4 = FiniteGroup::symmetric_group(4).unwrap();
        for g in 0..s4.order() as u32 {
            let mut x = g;
            let mut path = Vec::new();
            while let Some((gi, parent)) = s4.word(x) {
                path.push(gi);
                x = parent;
            }
            assert_eq!(x, s4.identity());
            // rebuild: g = gens[i1] * (gens[i2] * (... * e))
            let mut y = s4.identity();
            for &gi in path.iter().rev() {
                y = s4.mul(s4.generators()[gi as usize], y);
            }
            assert_eq!(y, g);
        }
    }

    #[test]
    fn lazy_group_above_table_cap() {
        let s7 = FiniteGroup::symmetric_group(7).unwrap();
        assert_eq!(s7.order(), 5040);
        let a = s7.generators()[0];
        let b = s7.generators()[1];
        assert_eq!(s7.mul(s7.mul(a, b), s7.inv(s7.mul(a, b))), s7.identity());
    }
}
