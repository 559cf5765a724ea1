//! The bosonization B(G, g, chi) of a quantum linear space: PBW-basis
//! arithmetic, coproduct, character idempotents e_chi, trace elements t_chi,
//! the automorphisms pi_chi, and a trace-form radical oracle.
//!
//! Basis monomials are x_1^{a_1} ... x_theta^{a_theta} g with the group
//! element rightmost and 0 <= a_i < m_i.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group_chars::{AbelianGroup, Character, GroupElement};
use crate::linalg::Matrix;

/// The raw datum (G, g_1..g_theta, chi_1..chi_theta).
#[derive(Clone, Debug)]
pub struct QLSDatum {
    pub group: AbelianGroup,
    pub g_list: Vec<GroupElement>,
    pub chi_list: Vec<Character>,
}

/// Generalized Taft datum. Arithmetic is only supported for alpha = 0, where
/// the algebra is the rank-1 QLS over Z_n.
#[derive(Clone, Debug)]
pub struct TaftDatum {
    pub n: u64,
    pub m: u64,
    pub lambda: CycNumber,
    pub alpha: CycNumber,
}

impl TaftDatum {
    pub fn new(n: u64, m: u64, lambda: CycNumber, alpha: CycNumber) -> Result<TaftDatum> {
        if n == 0 || m == 0 || n % m != 0 {
            return Err(Error::InvalidDatum(format!(
                "taft datum requires m | n, got n={n}, m={m}"
            )));
        }
        match lambda.mult_order()? {
            Some(o) if o == m => {}
            _ => {
                return Err(Error::InvalidDatum(
                    "taft lambda must be a primitive m-th root of unity".into(),
                ))
            }
        }
        Ok(TaftDatum { n, m, lambda, alpha })
    }

    /// The rank-1 QLS datum, defined only when alpha = 0.
    pub fn to_qls(&self) -> Result<QLSDatum> {
        if !self.alpha.is_zero() {
            return Err(Error::Unsupported(
                "generalized Taft algebras with alpha != 0 have no QLS presentation; \
                 arithmetic is refused"
                    .into(),
            ));
        }
        let group = AbelianGroup::new(vec![self.n])?;
        let g = group.element(&[1])?;
        // chi with chi(g) = lambda
        let mut chi = None;
        for c in 0..self.n {
            let cand = group.character(&[c as i64])?;
            if cand.eval(&g)? == self.lambda {
                chi = Some(cand);
                break;
            }
        }
        let chi = chi.ok_or_else(|| {
            Error::InvalidDatum("taft lambda is not a value of any character of Z_n".into())
        })?;
        Ok(QLSDatum {
            group,
            g_list: vec![g],
            chi_list: vec![chi],
        })
    }
}

/// PBW basis label x^alpha g.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub alpha: Vec<u32>,
    pub g: Vec<u64>,
}

/// A linear combination of PBW basis monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BElement {
    terms: BTreeMap<BasisLabel, CycNumber>,
}

impl BElement {
    pub fn zero() -> BElement {
        BElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, &CycNumber)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, label: BasisLabel, coeff: CycNumber) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(label.clone()).or_insert_with(CycNumber::zero);
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn from_term(label: BasisLabel, coeff: CycNumber) -> BElement {
        let mut e = BElement::zero();
        e.add_term(label, coeff);
        e
    }

    pub fn add(&self, other: &BElement) -> BElement {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BElement) -> BElement {
        self.add(&other.scale(&CycNumber::from_integer(-1)))
    }

    pub fn scale(&self, s: &CycNumber) -> BElement {
        let mut out = BElement::zero();
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c.mul(s));
        }
        out
    }
}

/// Sparse element of B tensor B, used for coproducts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(BasisLabel, BasisLabel), CycNumber>,
}

impl TensorElement {
    pub fn zero() -> TensorElement {
        TensorElement::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(BasisLabel, BasisLabel), &CycNumber)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, label: (BasisLabel, BasisLabel), coeff: CycNumber) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(label.clone()).or_insert_with(CycNumber::zero);
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            self.terms.remove(&label);
        }
    }
}

/// The validated algebra B(G, g, chi) with derived orders m_i and braiding
/// scalars q_{ij} = chi_j(g_i).
#[derive(Debug)]
pub struct Bosonization {
    datum: QLSDatum,
    m: Vec<u32>,
    lambda: Vec<CycNumber>,
    q: Vec<Vec<CycNumber>>,
    /// chi_j evaluated on every group element, indexed by [j][element index].
    chi_table: Vec<HashMap<Vec<u64>, CycNumber>>,
}

impl Bosonization {
    /// Validates the datum: computes m_i = ord(chi_i(g_i)), rejecting order 1,
    /// and the braiding matrix.
    pub fn new(datum: QLSDatum) -> Result<Bosonization> {
        if datum.g_list.len() != datum.chi_list.len() {
            return Err(Error::InvalidDatum(
                "g and chi lists have different lengths".into(),
            ));
        }
        let theta = datum.g_list.len();
        let mut m = Vec::with_capacity(theta);
        let mut lambda = Vec::with_capacity(theta);
        for i in 0..theta {
            let li = datum.chi_list[i].eval(&datum.g_list[i])?;
            let order = li
                .mult_order()?
                .ok_or_else(|| Error::InvalidDatum("chi_i(g_i) is not a root of unity".into()))?;
            if order < 2 {
                return Err(Error::OrderOne { index: i + 1 });
            }
            m.push(order as u32);
            lambda.push(li);
        }
        let mut q = vec![vec![CycNumber::one(); theta]; theta];
        for i in 0..theta {
            for j in 0..theta {
                q[i][j] = datum.chi_list[j].eval(&datum.g_list[i])?;
            }
        }
        for i in 0..theta {
            for j in (i + 1)..theta {
                if !q[i][j].mul(&q[j][i]).is_one() {
                    return Err(Error::InvalidDatum(format!(
                        "chi_{a}(g_{b}) chi_{b}(g_{a}) != 1",
                        a = j + 1,
                        b = i + 1
                    )));
                }
            }
        }
        let mut chi_table = Vec::with_capacity(theta);
        for j in 0..theta {
            let mut table = HashMap::new();
            for g in datum.group.elements() {
                table.insert(g.exps().to_vec(), datum.chi_list[j].eval(&g)?);
            }
            chi_table.push(table);
        }
        Ok(Bosonization {
            datum,
            m,
            lambda,
            q,
            chi_table,
        })
    }

    pub fn datum(&self) -> &QLSDatum {
        &self.datum
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.datum.group
    }

    pub fn theta(&self) -> usize {
        self.m.len()
    }

    pub fn orders(&self) -> &[u32] {
        &self.m
    }

    pub fn lambda(&self, i: usize) -> &CycNumber {
        &self.lambda[i]
    }

    pub fn braiding(&self, i: usize, j: usize) -> &CycNumber {
        &self.q[i][j]
    }

    pub fn dim(&self) -> usize {
        let mprod: u64 = self.m.iter().map(|&m| m as u64).product();
        (self.datum.group.order() * mprod) as usize
    }

    pub fn basis(&self) -> Vec<BasisLabel> {
        let mut alphas = vec![vec![]];
        for &mi in &self.m {
            let mut next = Vec::new();
            for a in &alphas {
                for v in 0..mi {
                    let mut a2 = a.clone();
                    a2.push(v);
                    next.push(a2);
                }
            }
            alphas = next;
        }
        let mut out = Vec::with_capacity(self.dim());
        for alpha in &alphas {
            for g in self.datum.group.elements() {
                out.push(BasisLabel {
                    alpha: alpha.clone(),
                    g: g.exps().to_vec(),
                });
            }
        }
        out
    }

    pub fn unit(&self) -> BElement {
        BElement::from_term(
            BasisLabel {
                alpha: vec![0; self.theta()],
                g: vec![0; self.datum.group.rank()],
            },
            CycNumber::one(),
        )
    }

    pub fn gen_x(&self, i: usize) -> BElement {
        let mut alpha = vec![0; self.theta()];
        alpha[i] = 1;
        BElement::from_term(
            BasisLabel {
                alpha,
                g: vec![0; self.datum.group.rank()],
            },
            CycNumber::one(),
        )
    }

    pub fn gen_g(&self, g: &GroupElement) -> BElement {
        BElement::from_term(
            BasisLabel {
                alpha: vec![0; self.theta()],
                g: g.exps().to_vec(),
            },
            CycNumber::one(),
        )
    }

    fn chi_on(&self, j: usize, g_exps: &[u64]) -> &CycNumber {
        &self.chi_table[j][g_exps]
    }

    /// (x^a g)(x^b h) in normal form, or None when a power relation kills it.
    pub fn monomial_mul(
        &self,
        left: &BasisLabel,
        right: &BasisLabel,
    ) -> Result<Option<(CycNumber, BasisLabel)>> {
        let theta = self.theta();
        let mut alpha = Vec::with_capacity(theta);
        for i in 0..theta {
            let s = left.alpha[i] + right.alpha[i];
            if s >= self.m[i] {
                return Ok(None);
            }
            alpha.push(s);
        }
        let mut scalar = CycNumber::one();
        // push g past x^b: g x_j = chi_j(g) x_j g
        for j in 0..theta {
            if right.alpha[j] > 0 {
                scalar = scalar.mul(&self.chi_on(j, &left.g).pow(right.alpha[j] as i64)?);
            }
        }
        // interleave x^a x^b: each x_j from b crosses x_i from a for i > j
        for i in 0..theta {
            if left.alpha[i] == 0 {
                continue;
            }
            for j in 0..i {
                if right.alpha[j] > 0 {
                    let e = (left.alpha[i] * right.alpha[j]) as i64;
                    scalar = scalar.mul(&self.q[i][j].pow(e)?);
                }
            }
        }
        let g = self
            .datum
            .group
            .element(&left.g.iter().map(|&x| x as i64).collect::<Vec<_>>())?
            .mul(&self
                .datum
                .group
                .element(&right.g.iter().map(|&x| x as i64).collect::<Vec<_>>())?)?;
        Ok(Some((
            scalar,
            BasisLabel {
                alpha,
                g: g.exps().to_vec(),
            },
        )))
    }

    pub fn multiply(&self, a: &BElement, b: &BElement) -> Result<BElement> {
        let mut out = BElement::zero();
        for (la, ca) in a.terms() {
            for (lb, cb) in b.terms() {
                if let Some((s, l)) = self.monomial_mul(la, lb)? {
                    out.add_term(l, s.mul(ca).mul(cb));
                }
            }
        }
        Ok(out)
    }

    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for ((a1, a2), ca) in a.terms() {
            for ((b1, b2), cb) in b.terms() {
                let Some((s1, l1)) = self.monomial_mul(a1, b1)? else {
                    continue;
                };
                let Some((s2, l2)) = self.monomial_mul(a2, b2)? else {
                    continue;
                };
                out.add_term((l1, l2), ca.mul(cb).mul(&s1).mul(&s2));
            }
        }
        Ok(out)
    }

    fn tensor_unit(&self) -> TensorElement {
        let one = BasisLabel {
            alpha: vec![0; self.theta()],
            g: vec![0; self.datum.group.rank()],
        };
        let mut t = TensorElement::zero();
        t.add_term((one.clone(), one), CycNumber::one());
        t
    }

    fn coproduct_x(&self, i: usize) -> TensorElement {
        let theta = self.theta();
        let rank = self.datum.group.rank();
        let one = BasisLabel {
            alpha: vec![0; theta],
            g: vec![0; rank],
        };
        let gi = BasisLabel {
            alpha: vec![0; theta],
            g: self.datum.g_list[i].exps().to_vec(),
        };
        let mut xi_alpha = vec![0; theta];
        xi_alpha[i] = 1;
        let xi = BasisLabel {
            alpha: xi_alpha,
            g: vec![0; rank],
        };
        let mut t = TensorElement::zero();
        t.add_term((gi, xi.clone()), CycNumber::one());
        t.add_term((xi, one), CycNumber::one());
        t
    }

    /// Coproduct, computed as an algebra map on PBW factors.
    pub fn comultiply(&self, a: &BElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (label, coeff) in a.terms() {
            let mut acc = self.tensor_unit();
            for i in 0..self.theta() {
                let dxi = self.coproduct_x(i);
                for _ in 0..label.alpha[i] {
                    acc = self.tensor_mul(&acc, &dxi)?;
                }
            }
            let gg = {
                let gl = BasisLabel {
                    alpha: vec![0; self.theta()],
                    g: label.g.clone(),
                };
                let mut t = TensorElement::zero();
                t.add_term((gl.clone(), gl), CycNumber::one());
                t
            };
            acc = self.tensor_mul(&acc, &gg)?;
            for (l, c) in acc.terms() {
                out.add_term(l.clone(), c.mul(coeff));
            }
        }
        Ok(out)
    }

    /// eps(x^alpha g) = [alpha = 0].
    pub fn counit(&self, a: &BElement) -> CycNumber {
        let mut acc = CycNumber::zero();
        for (label, coeff) in a.terms() {
            if label.alpha.iter().all(|&v| v == 0) {
                acc = acc.add(coeff);
            }
        }
        acc
    }

    /// e_chi = (1/|G|) sum_g chi(g) g.
    pub fn e_chi(&self, chi: &Character) -> Result<BElement> {
        let order = CycNumber::from_integer(self.datum.group.order() as i64);
        let inv_order = order.inverse()?;
        let mut out = BElement::zero();
        for g in self.datum.group.elements() {
            let coeff = chi.eval(&g)?.mul(&inv_order);
            out.add_term(
                BasisLabel {
                    alpha: vec![0; self.theta()],
                    g: g.exps().to_vec(),
                },
                coeff,
            );
        }
        Ok(out)
    }

    /// xbar = prod_i x_i^{m_i - 1}.
    pub fn x_bar(&self) -> BElement {
        BElement::from_term(
            BasisLabel {
                alpha: self.m.iter().map(|&m| m - 1).collect(),
                g: vec![0; self.datum.group.rank()],
            },
            CycNumber::one(),
        )
    }

    /// t_chi = e_chi xbar.
    pub fn t_chi(&self, chi: &Character) -> Result<BElement> {
        self.multiply(&self.e_chi(chi)?, &self.x_bar())
    }

    /// The automorphism x^alpha g -> chi(g) x^alpha g.
    pub fn pi_chi(&self, chi: &Character, a: &BElement) -> Result<BElement> {
        let mut out = BElement::zero();
        for (label, coeff) in a.terms() {
            let g = self
                .datum
                .group
                .element(&label.g.iter().map(|&x| x as i64).collect::<Vec<_>>())?;
            out.add_term(label.clone(), coeff.mul(&chi.eval(&g)?));
        }
        Ok(out)
    }

    /// Trace of left multiplication by `a` on B.
    fn trace_left_mul(&self, label: &BasisLabel, basis: &[BasisLabel]) -> Result<CycNumber> {
        let mut acc = CycNumber::zero();
        for b in basis {
            if let Some((s, l)) = self.monomial_mul(label, b)? {
                if &l == b {
                    acc = acc.add(&s);
                }
            }
        }
        Ok(acc)
    }

    /// Nullspace of the trace form T(a,b) = tr(L_{ab}); in characteristic zero
    /// this is the Jacobson radical (Dickson's criterion).
    pub fn radical_basis(&self, limit: usize) -> Result<Vec<Vec<CycNumber>>> {
        let dim = self.dim();
        if dim > limit {
            return Err(Error::SizeLimit { dim, limit });
        }
        let basis = self.basis();
        let mut t = Matrix::zero(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                if let Some((s, l)) = self.monomial_mul(&basis[i], &basis[j])? {
                    let tr = self.trace_left_mul(&l, &basis)?;
                    t.set(i, j, s.mul(&tr));
                }
            }
        }
        t.nullspace()
    }

    pub fn radical_dimension(&self, limit: usize) -> Result<usize> {
        Ok(self.radical_basis(limit)?.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sweedler() -> Bosonization {
        let group = AbelianGroup::new(vec![2]).unwrap();
        let g = group.element(&[1]).unwrap();
        let chi = group.character(&[1]).unwrap();
        Bosonization::new(QLSDatum {
            group,
            g_list: vec![g],
            chi_list: vec![chi],
        })
        .unwrap()
    }

    fn taft3() -> Bosonization {
        let group = AbelianGroup::new(vec![3]).unwrap();
        let g = group.element(&[1]).unwrap();
        let chi = group.character(&[1]).unwrap();
        Bosonization::new(QLSDatum {
            group,
            g_list: vec![g],
            chi_list: vec![chi],
        })
        .unwrap()
    }

    fn rank2_z3z3() -> Bosonization {
        // the final-example datum: chi_1 = (1,1), chi_2 = (2,2) over Z_3 x Z_3
        let group = AbelianGroup::new(vec![3, 3]).unwrap();
        let g1 = group.element(&[1, 0]).unwrap();
        let g2 = group.element(&[0, 1]).unwrap();
        let chi1 = group.character(&[1, 1]).unwrap();
        let chi2 = group.character(&[2, 2]).unwrap();
        Bosonization::new(QLSDatum {
            group,
            g_list: vec![g1, g2],
            chi_list: vec![chi1, chi2],
        })
        .unwrap()
    }

    #[test]
    fn validate_datum_examples() {
        let b = sweedler();
        assert_eq!(b.orders(), &[2]);
        assert_eq!(b.lambda(0), &CycNumber::from_integer(-1));

        // ex.sp datum with n = 3: chi_1(g_1) = p^{-1} gives m = 3
        let group = AbelianGroup::new(vec![3, 3]).unwrap();
        let g1 = group.element(&[1, 0]).unwrap();
        let g2 = group.element(&[0, 1]).unwrap();
        let chi1 = group.character(&[2, 1]).unwrap();
        let chi2 = group.character(&[2, 2]).unwrap();
        let b = Bosonization::new(QLSDatum {
            group: group.clone(),
            g_list: vec![g1.clone(), g2.clone()],
            chi_list: vec![chi1.clone(), chi2],
        })
        .unwrap();
        assert_eq!(b.orders(), &[3, 3]);

        // chi_1(g_2) chi_2(g_1) != 1 rejected
        let bad = group.character(&[1, 2]).unwrap();
        assert!(Bosonization::new(QLSDatum {
            group: group.clone(),
            g_list: vec![g1.clone(), g2],
            chi_list: vec![chi1, bad],
        })
        .is_err());

        // chi_i(g_i) = 1 rejected
        let trivial = group.trivial_character();
        let err = Bosonization::new(QLSDatum {
            group,
            g_list: vec![g1],
            chi_list: vec![trivial],
        })
        .unwrap_err();
        assert_eq!(err, Error::OrderOne { index: 1 });
    }

    #[test]
    fn taft_datum_checks() {
        let lam = CycNumber::root_of_unity(3, 1).unwrap();
        let t = TaftDatum::new(6, 3, lam.clone(), CycNumber::zero()).unwrap();
        let qls = t.to_qls().unwrap();
        let b = Bosonization::new(qls).unwrap();
        assert_eq!(b.orders(), &[3]);
        assert_eq!(b.group().order(), 6);

        assert!(TaftDatum::new(6, 4, lam.clone(), CycNumber::zero()).is_err());
        let nonzero = TaftDatum::new(6, 3, lam, CycNumber::one()).unwrap();
        assert!(nonzero.to_qls().is_err());
    }

    #[test]
    fn multiply_examples() {
        let b = sweedler();
        let g = b.gen_g(&b.group().element(&[1]).unwrap());
        let x = b.gen_x(0);
        // (xg) x = x (gx) = -x^2 g = 0
        let xg = b.multiply(&x, &g).unwrap();
        assert!(b.multiply(&xg, &x).unwrap().is_zero());
        // g x = chi(g) x g = -xg
        let gx = b.multiply(&g, &x).unwrap();
        assert_eq!(gx, xg.scale(&CycNumber::from_integer(-1)));
        // unit
        let one = b.unit();
        assert_eq!(b.multiply(&one, &xg).unwrap(), xg);
    }

    #[test]
    fn comultiply_examples() {
        let b = taft3();
        let x = b.gen_x(0);
        let dx = b.comultiply(&x).unwrap();
        assert_eq!(dx.terms().count(), 2);

        let g = b.gen_g(&b.group().element(&[1]).unwrap());
        let dg = b.comultiply(&g).unwrap();
        let gl = BasisLabel {
            alpha: vec![0],
            g: vec![1],
        };
        let terms: Vec<_> = dg.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, &(gl.clone(), gl));
        assert!(terms[0].1.is_one());

        // rank 1, m = 3: Delta(x^2) = g^2 (x) x^2 + (1+lambda) xg (x) x + x^2 (x) 1
        let x2 = b.multiply(&x, &x).unwrap();
        let dx2 = b.comultiply(&x2).unwrap();
        let lam = b.lambda(0).clone();
        let mut expected = TensorElement::zero();
        expected.add_term(
            (
                BasisLabel { alpha: vec![0], g: vec![2] },
                BasisLabel { alpha: vec![2], g: vec![0] },
            ),
            CycNumber::one(),
        );
        expected.add_term(
            (
                BasisLabel { alpha: vec![1], g: vec![1] },
                BasisLabel { alpha: vec![1], g: vec![0] },
            ),
            CycNumber::one().add(&lam),
        );
        expected.add_term(
            (
                BasisLabel { alpha: vec![2], g: vec![0] },
                BasisLabel { alpha: vec![0], g: vec![0] },
            ),
            CycNumber::one(),
        );
        assert_eq!(dx2, expected);
    }

    #[test]
    fn coassociativity_and_counit_on_basis() {
        for b in [sweedler(), taft3()] {
            for label in b.basis() {
                let elt = BElement::from_term(label.clone(), CycNumber::one());
                let d = b.comultiply(&elt).unwrap();
                // (Delta x id) Delta = (id x Delta) Delta, compared as triple maps
                let mut lhs: BTreeMap<(BasisLabel, BasisLabel, BasisLabel), CycNumber> =
                    BTreeMap::new();
                let mut rhs = lhs.clone();
                for ((l1, l2), c) in d.terms() {
                    let d1 = b
                        .comultiply(&BElement::from_term(l1.clone(), CycNumber::one()))
                        .unwrap();
                    for ((a, bb), c2) in d1.terms() {
                        let key = (a.clone(), bb.clone(), l2.clone());
                        let e = lhs.entry(key).or_insert_with(CycNumber::zero);
                        *e = e.add(&c.mul(c2));
                    }
                    let d2 = b
                        .comultiply(&BElement::from_term(l2.clone(), CycNumber::one()))
                        .unwrap();
                    for ((a, bb), c2) in d2.terms() {
                        let key = (l1.clone(), a.clone(), bb.clone());
                        let e = rhs.entry(key).or_insert_with(CycNumber::zero);
                        *e = e.add(&c.mul(c2));
                    }
                }
                lhs.retain(|_, v| !v.is_zero());
                rhs.retain(|_, v| !v.is_zero());
                assert_eq!(lhs, rhs);

                // counit law: (eps x id) Delta = id
                let mut recovered = BElement::zero();
                for ((l1, l2), c) in d.terms() {
                    let eps = b.counit(&BElement::from_term(l1.clone(), CycNumber::one()));
                    recovered.add_term(l2.clone(), c.mul(&eps));
                }
                assert_eq!(recovered, elt);
            }
        }
    }

    #[test]
    fn idempotent_suite() {
        for b in [sweedler(), taft3(), rank2_z3z3()] {
            let chars = b.group().characters();
            let mut total = BElement::zero();
            for chi in &chars {
                let e = b.e_chi(chi).unwrap();
                total = total.add(&e);
                for psi in &chars {
                    let ep = b.e_chi(psi).unwrap();
                    let prod = b.multiply(&e, &ep).unwrap();
                    if chi == psi {
                        assert_eq!(prod, e);
                    } else {
                        assert!(prod.is_zero());
                    }
                }
                // h e_chi = e_chi h = chi(h^{-1}) e_chi
                for h in b.group().elements() {
                    let hb = b.gen_g(&h);
                    let lhs = b.multiply(&hb, &e).unwrap();
                    let rhs = e.scale(&chi.eval(&h.inverse()).unwrap());
                    assert_eq!(lhs, rhs);
                    assert_eq!(b.multiply(&e, &hb).unwrap(), rhs);
                }
                // e_chi x_i = x_i e_{chi tensor chi_i}
                for i in 0..b.theta() {
                    let xi = b.gen_x(i);
                    let lhs = b.multiply(&e, &xi).unwrap();
                    let shifted = chi.product(&b.datum().chi_list[i]).unwrap();
                    let rhs = b.multiply(&xi, &b.e_chi(&shifted).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            assert_eq!(total, b.unit());
        }
    }

    #[test]
    fn t_chi_examples() {
        // theta = 0: t_chi = e_chi
        let group = AbelianGroup::new(vec![4]).unwrap();
        let b = Bosonization::new(QLSDatum {
            group: group.clone(),
            g_list: vec![],
            chi_list: vec![],
        })
        .unwrap();
        for chi in group.characters() {
            assert_eq!(b.t_chi(&chi).unwrap(), b.e_chi(&chi).unwrap());
        }

        // Sweedler: t_0 = (x + gx)/2, which in PBW normal form is (x - xg)/2
        let b = sweedler();
        let t0 = b.t_chi(&b.group().trivial_character()).unwrap();
        let half = CycNumber::from_rational(crate::cyclotomic::rational(1, 2));
        let mut expected = BElement::zero();
        expected.add_term(BasisLabel { alpha: vec![1], g: vec![0] }, half.clone());
        expected.add_term(
            BasisLabel { alpha: vec![1], g: vec![1] },
            half.neg(),
        );
        assert_eq!(t0, expected);
        // same element written as (x + gx)/2
        let g = b.gen_g(&b.group().element(&[1]).unwrap());
        let x = b.gen_x(0);
        let gx = b.multiply(&g, &x).unwrap();
        assert_eq!(t0, x.add(&gx).scale(&half));
    }

    #[test]
    fn t0_is_a_left_integral() {
        for b in [sweedler(), taft3(), rank2_z3z3()] {
            let t0 = b.t_chi(&b.group().trivial_character()).unwrap();
            for label in b.basis() {
                let elt = BElement::from_term(label, CycNumber::one());
                let prod = b.multiply(&elt, &t0).unwrap();
                let eps = b.counit(&elt);
                assert_eq!(prod, t0.scale(&eps));
            }
        }
    }

    #[test]
    fn pi_chi_examples() {
        let b = taft3();
        let chars = b.group().characters();
        for chi in &chars {
            for chi2 in &chars {
                let e = b.e_chi(chi2).unwrap();
                let mapped = b.pi_chi(chi, &e).unwrap();
                let expected = b.e_chi(&chi2.product(chi).unwrap()).unwrap();
                assert_eq!(mapped, expected);
            }
            // pi_{chi^{-1}}(t_chi) = t_0
            let t = b.t_chi(chi).unwrap();
            assert_eq!(
                b.pi_chi(&chi.inverse(), &t).unwrap(),
                b.t_chi(&b.group().trivial_character()).unwrap()
            );
        }
        // pi_{chi_0} = id on every basis element
        for label in b.basis() {
            let elt = BElement::from_term(label, CycNumber::one());
            assert_eq!(
                b.pi_chi(&b.group().trivial_character(), &elt).unwrap(),
                elt
            );
        }
    }

    #[test]
    fn pi_chi_is_multiplicative_and_composes() {
        let b = sweedler();
        let chars = b.group().characters();
        let basis = b.basis();
        for chi in &chars {
            for la in &basis {
                for lb in &basis {
                    let a = BElement::from_term(la.clone(), CycNumber::one());
                    let c = BElement::from_term(lb.clone(), CycNumber::one());
                    let lhs = b.pi_chi(chi, &b.multiply(&a, &c).unwrap()).unwrap();
                    let rhs = b
                        .multiply(&b.pi_chi(chi, &a).unwrap(), &b.pi_chi(chi, &c).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            for psi in &chars {
                for la in &basis {
                    let a = BElement::from_term(la.clone(), CycNumber::one());
                    let lhs = b.pi_chi(chi, &b.pi_chi(psi, &a).unwrap()).unwrap();
                    let rhs = b.pi_chi(&chi.product(psi).unwrap(), &a).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn associativity_exhaustive_small() {
        for b in [sweedler(), taft3()] {
            let basis = b.basis();
            assert!(basis.len() <= 64);
            for la in &basis {
                for lb in &basis {
                    for lc in &basis {
                        let a = BElement::from_term(la.clone(), CycNumber::one());
                        let bb = BElement::from_term(lb.clone(), CycNumber::one());
                        let c = BElement::from_term(lc.clone(), CycNumber::one());
                        let lhs = b.multiply(&b.multiply(&a, &bb).unwrap(), &c).unwrap();
                        let rhs = b.multiply(&a, &b.multiply(&bb, &c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn associativity_sampled_rank2() {
        let b = rank2_z3z3();
        let basis = b.basis();
        // deterministic sample of triples
        let n = basis.len();
        for k in 0..200 {
            let i = (k * 37) % n;
            let j = (k * 53 + 11) % n;
            let l = (k * 71 + 29) % n;
            let a = BElement::from_term(basis[i].clone(), CycNumber::one());
            let bb = BElement::from_term(basis[j].clone(), CycNumber::one());
            let c = BElement::from_term(basis[l].clone(), CycNumber::one());
            let lhs = b.multiply(&b.multiply(&a, &bb).unwrap(), &c).unwrap();
            let rhs = b.multiply(&a, &b.multiply(&bb, &c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn radical_dimension_examples() {
        // Sweedler, dim 4
        assert_eq!(sweedler().radical_dimension(4096).unwrap(), 2);
        // group algebra of Z_4: semisimple
        let group = AbelianGroup::new(vec![4]).unwrap();
        let b = Bosonization::new(QLSDatum {
            group,
            g_list: vec![],
            chi_list: vec![],
        })
        .unwrap();
        assert_eq!(b.radical_dimension(4096).unwrap(), 0);
        // Taft n = m = 3, dim 9
        assert_eq!(taft3().radical_dimension(4096).unwrap(), 6);
    }

    #[test]
    fn radical_is_the_positive_x_span() {
        for b in [sweedler(), taft3()] {
            let basis = b.basis();
            let null = b.radical_basis(4096).unwrap();
            let expected: usize = basis
                .iter()
                .filter(|l| l.alpha.iter().any(|&a| a > 0))
                .count();
            assert_eq!(null.len(), expected);
            // every nullspace vector is supported on alpha != 0 labels
            for v in &null {
                for (coord, label) in v.iter().zip(&basis) {
                    if label.alpha.iter().all(|&a| a == 0) {
                        assert!(coord.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn size_limit_enforced() {
        let b = taft3();
        assert!(matches!(
            b.radical_dimension(4).unwrap_err(),
            Error::SizeLimit { .. }
        ));
    }
}
