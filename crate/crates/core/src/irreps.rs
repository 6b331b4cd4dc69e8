//! Irreducible representations used for the scalar-action checks: Young's
//! seminormal form for the symmetric groups (all matrices rational) and
//! induced bipartition representations for the hyperoctahedral groups.

use crate::matrix::{q_identity, q_mat_mul, ExactMat};
use crate::scalar::{q, qq, Q, Scalar};
use crate::weylgroup::{GroupAlgElt, WeylGroup};
use num_traits::Zero;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum IrrepError {
    #[error("element is not central")]
    NotCentral,
    #[error("central element does not act by a scalar (upstream bug)")]
    NonScalar,
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
}

/// Partition with weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Sum of m-th powers of contents `col - row` (0-indexed cells).
    pub fn content_power_sum(&self, m: u32) -> Q {
        let mut total = q(0);
        for (row, &len) in self.0.iter().enumerate() {
            for col in 0..len {
                let c = col as i64 - row as i64;
                let mut p = q(1);
                for _ in 0..m {
                    p *= q(c);
                }
                total += p;
            }
        }
        total
    }

    pub fn label(&self) -> String {
        if self.0.is_empty() {
            "0".to_string()
        } else {
            format!(
                "({})",
                self.0
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }
}

/// Ordered pair of partitions labelling a hyperoctahedral irreducible.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct BiPartition(pub Partition, pub Partition);

impl BiPartition {
    pub fn label(&self) -> String {
        format!("[{},{}]", self.0.label(), self.1.label())
    }
}

pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn bipartitions(n: u32) -> Vec<BiPartition> {
    let mut out = Vec::new();
    for a in 0..=n {
        for l in partitions(a) {
            for m in partitions(n - a) {
                out.push(BiPartition(l.clone(), m));
            }
        }
    }
    out
}

/// Standard Young tableaux as row lists, in a fixed deterministic order.
pub fn standard_tableaux(shape: &Partition) -> Vec<Vec<Vec<u32>>> {
    fn rec(shape: &[u32], n: u32, out: &mut Vec<Vec<Vec<u32>>>, partial: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(partial.clone());
            return;
        }
        // remove the largest entry from each removable corner
        for r in 0..shape.len() {
            let len = shape[r];
            if len == 0 {
                continue;
            }
            let removable = r + 1 == shape.len() || shape[r + 1] < len;
            if removable && partial[r][(len - 1) as usize] == 0 {
                partial[r][(len - 1) as usize] = n;
                let mut smaller: Vec<u32> = shape.to_vec();
                smaller[r] -= 1;
                rec(&smaller, n - 1, out, partial);
                partial[r][(len - 1) as usize] = 0;
            }
        }
    }
    if shape.size() == 0 {
        return vec![vec![]];
    }
    let mut partial: Vec<Vec<u32>> = shape.0.iter().map(|&l| vec![0; l as usize]).collect();
    let mut out = Vec::new();
    rec(&shape.0, shape.size(), &mut out, &mut partial);
    out.sort();
    out
}

/// Hook length formula, used as an independent dimension oracle in tests.
pub fn hook_dimension(shape: &Partition) -> u64 {
    let n = shape.size() as u64;
    if n == 0 {
        return 1;
    }
    let rows = &shape.0;
    let col_len = |c: u32| rows.iter().filter(|&&l| l > c).count() as u64;
    let mut hooks: u64 = 1;
    for (r, &len) in rows.iter().enumerate() {
        for c in 0..len {
            let arm = (len - 1 - c) as u64;
            let leg = col_len(c) - 1 - r as u64;
            hooks *= arm + leg + 1;
        }
    }
    (1..=n).product::<u64>() / hooks
}

/// Matrix representation given by one exact matrix per group generator.
#[derive(Clone, Debug)]
pub struct MatrixIrrep {
    pub dim: usize,
    pub gens: Vec<Vec<Vec<Q>>>,
    pub label: String,
}

impl MatrixIrrep {
    pub fn apply_word(&self, word: &[usize]) -> Vec<Vec<Q>> {
        let mut m = q_identity(self.dim);
        for &g in word {
            m = q_mat_mul(&m, &self.gens[g]);
        }
        m
    }

    pub fn character_of_word(&self, word: &[usize]) -> Q {
        let m = self.apply_word(word);
        (0..self.dim).map(|i| m[i][i].clone()).sum()
    }

    /// Checks the defining Coxeter relations against the group itself:
    /// `rho(s_i s_j)` must have the same order as `s_i s_j`.
    pub fn verify_relations(&self, wg: &WeylGroup) {
        for (i, &si) in wg.simple.iter().enumerate() {
            for (j, &sj) in wg.simple.iter().enumerate() {
                let prod = wg.mul_idx(si, sj);
                let mut ord = 1usize;
                let mut cur = prod;
                while cur != wg.id {
                    cur = wg.mul_idx(cur, prod);
                    ord += 1;
                }
                let m = q_mat_mul(&self.gens[i], &self.gens[j]);
                let mut acc = q_identity(self.dim);
                for _ in 0..ord {
                    acc = q_mat_mul(&acc, &m);
                }
                assert_eq!(
                    acc,
                    q_identity(self.dim),
                    "{}: relation (s{} s{})^{} failed",
                    self.label,
                    i + 1,
                    j + 1,
                    ord
                );
            }
        }
    }

    /// Scalar through which a central group-algebra element acts.
    pub fn central_scalar(
        &self,
        wg: &WeylGroup,
        x: &GroupAlgElt,
    ) -> Result<Scalar, IrrepError> {
        if !x.is_central(wg) {
            return Err(IrrepError::NotCentral);
        }
        let mut acc = ExactMat::zero(self.dim, self.dim);
        for (&w, c) in &x.terms {
            let m = self.apply_word(wg.word(w));
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if !m[i][j].is_zero() {
                        acc.add_at(i, j, &c.scale(&m[i][j]));
                    }
                }
            }
        }
        acc.as_scalar_multiple_of_identity()
            .ok_or(IrrepError::NonScalar)
    }
}

/// Largest symmetric group for which seminormal matrices are built.
pub const SEMINORMAL_CAP: u32 = 6;
/// Largest hyperoctahedral rank for which induced matrices are built.
pub const INDUCED_CAP: usize = 4;

/// Young's seminormal form of the irreducible of `S_n` labelled by `shape`.
/// Generator `i` (0-based) is the adjacent transposition `(i+1, i+2)`.
pub fn sn_seminormal(shape: &Partition) -> MatrixIrrep {
    let n = shape.size();
    assert!(n <= SEMINORMAL_CAP, "partition size beyond the seminormal cap");
    let tabs = standard_tableaux(shape);
    let dim = tabs.len();
    let pos_of = |t: &Vec<Vec<u32>>, v: u32| -> (usize, usize) {
        for (r, row) in t.iter().enumerate() {
            if let Some(c) = row.iter().position(|&x| x == v) {
                return (r, c);
            }
        }
        unreachable!("entry in standard tableau")
    };
    let mut gens = Vec::new();
    for m in 1..n {
        let mut mat = vec![vec![Q::zero(); dim]; dim];
        for (t, tab) in tabs.iter().enumerate() {
            let (r1, c1) = pos_of(tab, m);
            let (r2, c2) = pos_of(tab, m + 1);
            if r1 == r2 {
                mat[t][t] = q(1);
            } else if c1 == c2 {
                mat[t][t] = q(-1);
            } else {
                let d = (c2 as i64 - r2 as i64) - (c1 as i64 - r1 as i64);
                let mut swapped = tab.clone();
                swapped[r1][c1] = m + 1;
                swapped[r2][c2] = m;
                let t2 = tabs.binary_search(&swapped).expect("swap is standard");
                mat[t][t] = qq(1, d);
                // the member with positive axial distance carries coefficient 1
                mat[t2][t] = if d > 0 {
                    q(1)
                } else {
                    q(1) - qq(1, d * d)
                };
            }
        }
        gens.push(mat);
    }
    let irrep = MatrixIrrep {
        dim,
        gens,
        label: format!("S{}{}", n, shape.label()),
    };
    // the defining relations, checked at construction time
    for (i, gi) in irrep.gens.iter().enumerate() {
        assert_eq!(q_mat_mul(gi, gi), q_identity(dim), "{}: involution", irrep.label);
        for (j, gj) in irrep.gens.iter().enumerate().skip(i + 1) {
            let prod = q_mat_mul(gi, gj);
            let order = if j == i + 1 { 3 } else { 2 };
            let mut acc = q_identity(dim);
            for _ in 0..order {
                acc = q_mat_mul(&acc, &prod);
            }
            assert_eq!(acc, q_identity(dim), "{}: braid", irrep.label);
        }
    }
    irrep
}

/// Word in adjacent transpositions composing (as matrices) to the given
/// permutation `p` (images, 0-based).
pub fn perm_to_adjacent_word(p: &[usize]) -> Vec<usize> {
    let mut arr: Vec<usize> = p.to_vec();
    let mut swaps = Vec::new();
    loop {
        let mut done = true;
        for j in 0..arr.len().saturating_sub(1) {
            if arr[j] > arr[j + 1] {
                arr.swap(j, j + 1);
                swaps.push(j);
                done = false;
            }
        }
        if done {
            break;
        }
    }
    let word: Vec<usize> = swaps.into_iter().rev().collect();
    // verify under function composition (matrix convention)
    let mut check: Vec<usize> = (0..p.len()).collect();
    for &j in &word {
        check.swap(j, j + 1);
    }
    assert_eq!(check, p, "adjacent word reconstruction");
    word
}

/// Signed permutation data of a hyperoctahedral group element.
/// `perm[j]` is the image coordinate of `e_j`; `sign[j]` its sign.
pub fn signed_perm(e: &crate::weylgroup::GroupElt) -> (Vec<usize>, Vec<i8>) {
    let n = e.dim();
    let rows = e.rows();
    let mut perm = vec![0usize; n];
    let mut sign = vec![0i8; n];
    for j in 0..n {
        for (i, row) in rows.iter().enumerate() {
            if !row[j].is_zero() {
                perm[j] = i;
                sign[j] = if row[j] == q(1) { 1 } else { -1 };
            }
        }
    }
    (perm, sign)
}

fn kron(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let (ra, ca) = (a.len(), a.first().map(|r| r.len()).unwrap_or(0));
    let (rb, cb) = (b.len(), b.first().map(|r| r.len()).unwrap_or(0));
    let mut out = vec![vec![Q::zero(); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// Image of a `W_a x W_b` element under
/// `sigma_(lambda,0) (tensor) sigma_(0,mu)`: the permutation parts act
/// through the seminormal matrices, and the sign flips in the second block
/// contribute the determinant character.
fn subgroup_image(
    h: &crate::weylgroup::GroupElt,
    a: usize,
    lam: &MatrixIrrep,
    mu: &MatrixIrrep,
) -> Vec<Vec<Q>> {
    let n = h.dim();
    let (perm, sign) = signed_perm(h);
    let pa: Vec<usize> = (0..a).map(|j| perm[j]).collect();
    let pb: Vec<usize> = (a..n).map(|j| perm[j] - a).collect();
    let ma = lam.apply_word(&perm_to_adjacent_word(&pa));
    let mut mb = mu.apply_word(&perm_to_adjacent_word(&pb));
    let neg: i8 = (a..n).map(|j| sign[j]).product();
    if neg < 0 {
        for row in mb.iter_mut() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    kron(&ma, &mb)
}

/// Irreducible of the hyperoctahedral group `W_n` labelled by a pair of
/// partitions, built by explicit coset induction from `W_a x W_b`.
pub fn bn_irrep(wg: &WeylGroup, bp: &BiPartition) -> MatrixIrrep {
    let n = wg.n;
    assert!(n <= INDUCED_CAP, "rank beyond the induced-representation cap");
    let a = bp.0.size() as usize;
    let b = bp.1.size() as usize;
    assert_eq!(a + b, n, "bipartition size must equal the rank");

    let lam = sn_seminormal(&bp.0);
    let mu = sn_seminormal(&bp.1);

    // members of W_a x W_b: the permutation part preserves {0..a-1}
    let in_subgroup = |w: usize| -> bool {
        let (perm, _) = signed_perm(&wg.elements[w]);
        (0..a).all(|j| perm[j] < a)
    };
    let subgroup: Vec<usize> = (0..wg.order()).filter(|&w| in_subgroup(w)).collect();

    // left cosets w H, keyed by minimal (length, index) representative
    let coset_key = |w: usize| -> (usize, usize) {
        subgroup
            .iter()
            .map(|&h| {
                let wh = wg.mul_idx(w, h);
                (wg.word(wh).len(), wh)
            })
            .min()
            .unwrap()
    };
    let mut reps: Vec<usize> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut keyed: Vec<(usize, usize)> = Vec::new();
    for w in 0..wg.order() {
        let key = coset_key(w);
        if seen.insert(key.1) {
            keyed.push(key);
        }
    }
    keyed.sort();
    for (_, r) in keyed {
        reps.push(r);
    }
    let m = reps.len();
    let block = lam.dim * mu.dim;
    let dim = m * block;

    let rep_coset = |w: usize| -> usize {
        let key = coset_key(w);
        reps.iter().position(|&r| r == key.1).unwrap()
    };

    let mut gens = Vec::new();
    for &s in &wg.simple {
        let mut mat = vec![vec![Q::zero(); dim]; dim];
        for (ci, &r) in reps.iter().enumerate() {
            let gr = wg.mul_idx(s, r);
            let cj = rep_coset(gr);
            let h = wg.mul_idx(wg.inverse[reps[cj]], gr);
            let img = subgroup_image(&wg.elements[h], a, &lam, &mu);
            for (bi, row) in img.iter().enumerate() {
                for (bj, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        mat[cj * block + bi][ci * block + bj] = v.clone();
                    }
                }
            }
        }
        gens.push(mat);
    }
    let irrep = MatrixIrrep {
        dim,
        gens,
        label: format!("W{}{}", n, bp.label()),
    };
    irrep.verify_relations(wg);
    irrep
}

/// `sigma_lambda(e_(12)) = Sigma_1(lambda)` — class-sum scalar of the
/// transpositions.
pub fn sn_transposition_scalar(shape: &Partition) -> Q {
    shape.content_power_sum(1)
}

/// `sigma_lambda(e_(123)) = -a(a-1)/2 + Sigma_2(lambda)` — class-sum scalar
/// of the 3-cycles.
pub fn sn_threecycle_scalar(shape: &Partition) -> Q {
    let a = shape.size() as i64;
    q(-a * (a - 1) / 2) + shape.content_power_sum(2)
}

/// Contents formula for `sigma_lambda(Omega_{S_n})` at `k = 1`:
/// `1/4 (n(n-1)/2 + Sigma_2(lambda))`.
pub fn sn_omega_scalar(shape: &Partition) -> Q {
    let n = shape.size() as i64;
    (q(n * (n - 1) / 2) + shape.content_power_sum(2)) * qq(1, 4)
}

/// Closed form for the scalar of `Omega_{W_n}` in the bipartition
/// representation, symbolic in `k_s`, `k_l`. The class sum of the positive
/// three-cycles has `(4/3) n(n-1)(n-2)` members and acts by
/// `4 (sigma_lambda(e_123) + sigma_mu(e_123))`, so with the `1/4 k_l^2`
/// class coefficient the three-cycle term enters with weight `k_l^2`.
pub fn bn_omega_scalar(bp: &BiPartition, n: u32) -> Scalar {
    use crate::scalar::Sym;
    let ks = Scalar::sym(Sym::k_s());
    let kl = Scalar::sym(Sym::k_l());
    let n = n as i64;
    let constant = (&kl.pow(2)).scale(&qq(2 * n * (n - 1), 4));
    let constant = &constant + &ks.pow(2).scale(&qq(n, 4));
    let three = kl
        .pow(2)
        .scale(&(sn_threecycle_scalar(&bp.0) + sn_threecycle_scalar(&bp.1)));
    let two = (&ks * &kl)
        .scale(&(sn_transposition_scalar(&bp.0) - sn_transposition_scalar(&bp.1)));
    &(&constant + &three) + &two
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{CartanType, RootSystem};
    use crate::weylgroup::{class_sum, omega_w, DEFAULT_GROUP_CAP};

    #[test]
    fn tableaux_counts_match_hook_lengths() {
        for n in 1..=6u32 {
            for p in partitions(n) {
                assert_eq!(
                    standard_tableaux(&p).len() as u64,
                    hook_dimension(&p),
                    "{:?}",
                    p
                );
            }
        }
    }

    #[test]
    fn seminormal_satisfies_coxeter_relations() {
        let rs = RootSystem::build(CartanType::A, 3).unwrap();
        let wg = WeylGroup::enumerate(&rs, DEFAULT_GROUP_CAP).unwrap();
        for p in partitions(4) {
            let irrep = sn_seminormal(&p);
            irrep.verify_relations(&wg);
        }
    }

    #[test]
    fn trivial_and_sign_are_one_dimensional() {
        let triv = sn_seminormal(&Partition(vec![4]));
        assert_eq!(triv.dim, 1);
        assert!(triv.gens.iter().all(|g| g[0][0] == q(1)));
        let sign = sn_seminormal(&Partition(vec![1, 1, 1, 1]));
        assert_eq!(sign.dim, 1);
        assert!(sign.gens.iter().all(|g| g[0][0] == q(-1)));
        assert_eq!(sn_seminormal(&Partition(vec![2, 1])).dim, 2);
    }

    #[test]
    fn omega_s3_scalars_match_contents_formula() {
        let rs = RootSystem::build(CartanType::A, 2).unwrap();
        let wg = WeylGroup::enumerate(&rs, DEFAULT_GROUP_CAP).unwrap();
        let omega = omega_w(&rs, &wg, false).substitute_k_one(&rs, &wg);
        for (shape, expect) in [
            (Partition(vec![3]), q(2)),
            (Partition(vec![2, 1]), qq(5, 4)),
            (Partition(vec![1, 1, 1]), q(2)),
        ] {
            let irrep = sn_seminormal(&shape);
            let got = irrep.central_scalar(&wg, &omega).unwrap();
            assert_eq!(got, Scalar::from_q(expect.clone()));
            assert_eq!(sn_omega_scalar(&shape), expect);
        }
    }

    #[test]
    fn omega_prime_kills_trivial() {
        let rs = RootSystem::build(CartanType::A, 2).unwrap();
        let wg = WeylGroup::enumerate(&rs, DEFAULT_GROUP_CAP).unwrap();
        let op = crate::weylgroup::omega_w_prime(&rs, &wg);
        let triv = sn_seminormal(&Partition(vec![3]));
        assert!(triv.central_scalar(&wg, &op).unwrap().is_zero());
    }

    #[test]
    fn bn_irrep_dimensions_and_characters() {
        let rs = RootSystem::build(CartanType::B, 2).unwrap();
        let wg = WeylGroup::enumerate(&rs, DEFAULT_GROUP_CAP).unwrap();
        // ((n),0) is trivial
        let triv = bn_irrep(&wg, &BiPartition(Partition(vec![2]), Partition(vec![])));
        assert_eq!(triv.dim, 1);
        assert!(triv.gens.iter().all(|g| g[0][0] == q(1)));
        // (0,(n)) sends short reflections to -1, long to +1
        let det_s = bn_irrep(&wg, &BiPartition(Partition(vec![]), Partition(vec![2])));
        assert_eq!(det_s.dim, 1);
        // simple 0 is long (e1 - e2), simple 1 is short (e2)
        assert_eq!(det_s.gens[0][0][0], q(1));
        assert_eq!(det_s.gens[1][0][0], q(-1));
        // ((1),(1)) has dimension [W2 : W1 x W1] = 2
        let mixed = bn_irrep(&wg, &BiPartition(Partition(vec![1]), Partition(vec![1])));
        assert_eq!(mixed.dim, 2);
        // dimensions square-sum to |W2|
        let total: usize = bipartitions(2)
            .iter()
            .map(|bp| bn_irrep(&wg, bp).dim.pow(2))
            .sum();
        assert_eq!(total, wg.order());
    }

    #[test]
    fn bn_omega_scalar_matches_matrix_action() {
        let rs = RootSystem::build(CartanType::B, 2).unwrap();
        let wg = WeylGroup::enumerate(&rs, DEFAULT_GROUP_CAP).unwrap();
        let omega = omega_w(&rs, &wg, false);
        for bp in bipartitions(2) {
            let irrep = bn_irrep(&wg, &bp);
            let got = irrep.central_scalar(&wg, &omega).unwrap();
            assert_eq!(got, bn_omega_scalar(&bp, 2), "{}", bp.label());
        }
    }

    #[test]
    fn bn_class_sum_identity_b2() {
        // Omega_{W_2} = 1/4 (2 * 2 * 1 * k_l^2 + 2 k_s^2) + 1/2 k_s k_l e_{B2}
        use crate::scalar::Sym;
        let rs = RootSystem::build(CartanType::B, 2).unwrap();
        let wg = WeylGroup::enumerate(&rs, DEFAULT_GROUP_CAP).unwrap();
        let omega = omega_w(&rs, &wg, false);
        // Coxeter element of B2: s_{e1} s_{e1-e2}
        let e1 = rs.pos_index(&[q(1), q(0)]).unwrap();
        let e1me2 = rs.pos_index(&[q(1), q(-1)]).unwrap();
        let cox = wg.mul_idx(wg.reflections[e1], wg.reflections[e1me2]);
        let eb2 = class_sum(&wg, cox);
        let ks = Scalar::sym(Sym::k_s());
        let kl = Scalar::sym(Sym::k_l());
        let konst = &kl.pow(2) + &ks.pow(2).scale(&qq(1, 2));
        let expect = GroupAlgElt::identity_times(&wg, konst)
            .add(&eb2.scale(&(&ks * &kl).scale(&qq(1, 2))));
        assert_eq!(omega, expect);
    }
}
