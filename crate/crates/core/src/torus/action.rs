use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GitError, Result};
use crate::lattice::{dot, IntMatrix};

/// Upper bound on the size of the generated finite group.
const MAX_FINITE_ORDER: usize = 100_000;

/// Integer vector in the character lattice `X(T) = Z^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharacterVector(#[serde(with = "crate::json::int_vec")] pub Vec<BigInt>);

/// Integer vector in the cocharacter lattice, paired with characters by the dot product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CocharacterVector(#[serde(with = "crate::json::int_vec")] pub Vec<BigInt>);

impl CharacterVector {
    pub fn from_i64(v: &[i64]) -> Self {
        CharacterVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        CharacterVector(vec![BigInt::zero(); rank])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        CharacterVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn neg(&self) -> Self {
        CharacterVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &CharacterVector) -> Self {
        CharacterVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Appends coordinates for new torus factors.
    pub fn extended(&self, extra: &[BigInt]) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(extra);
        CharacterVector(v)
    }
}

impl CocharacterVector {
    pub fn from_i64(v: &[i64]) -> Self {
        CocharacterVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn pairing(&self, chi: &CharacterVector) -> BigInt {
        dot(&self.0, &chi.0)
    }
}

/// The set of nonzero coordinates of a point, 0-based and sorted.
///
/// For a diagonal action every GIT predicate of a point is a function of its
/// support. JSON uses 1-based coordinate indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Support(Vec<usize>);

impl Support {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        Support(set.into_iter().collect())
    }

    pub fn empty() -> Self {
        Support(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        Support((0..n).collect())
    }

    /// From 1-based indices, as written in JSON and on the command line.
    pub fn from_one_based(indices: &[usize]) -> Result<Self> {
        if indices.contains(&0) {
            return Err(GitError::input("support indices are 1-based"));
        }
        Ok(Support::new(indices.iter().map(|i| i - 1)))
    }

    pub fn from_mask(mask: u64) -> Self {
        Support((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.0.iter().all(|i| other.contains(*i))
    }

    pub fn with(&self, i: usize) -> Support {
        Support::new(self.0.iter().copied().chain(std::iter::once(i)))
    }

    pub fn without(&self, i: usize) -> Support {
        Support(self.0.iter().copied().filter(|&j| j != i).collect())
    }

    pub fn complement(&self, n: usize) -> Support {
        Support((0..n).filter(|i| !self.contains(*i)).collect())
    }

    pub fn image(&self, perm: &[usize]) -> Support {
        Support::new(self.0.iter().map(|&i| perm[i]))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl fmt::Debug for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.one_based().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Support {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Support {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        Support::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// Every subset of `0..n`, ordered by bitmask.
pub fn all_supports(n: usize) -> Vec<Support> {
    assert!(n < 64, "support enumeration limited to fewer than 64 coordinates");
    (0..1u64 << n).map(Support::from_mask).collect()
}

/// A coordinate permutation together with the compatible automorphism of the torus.
///
/// `aut` acts on characters: `aut · χ_j = χ_{perm(j)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteElement {
    /// 0-based image of each coordinate.
    pub perm: Vec<usize>,
    pub aut: IntMatrix,
}

impl FiniteElement {
    pub fn identity(n: usize, r: usize) -> Self {
        FiniteElement { perm: (0..n).collect(), aut: IntMatrix::identity(r) }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &FiniteElement) -> FiniteElement {
        FiniteElement {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
            aut: self.aut.mul(&other.aut).expect("automorphisms share the torus rank"),
        }
    }
}

/// Diagonal action of `G_m^rank` on `A^dim`: coordinate `j` is scaled by the
/// character in column `j` of `weights`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAction {
    weights: IntMatrix,
    norm_form: IntMatrix,
    finite_part: Vec<FiniteElement>,
}

impl TorusAction {
    /// Action with identity norm and no finite part.
    pub fn new(weights: IntMatrix) -> Result<Self> {
        let r = weights.rows();
        Self::with_extras(weights, IntMatrix::identity(r), Vec::new())
    }

    /// Action from characters given as columns.
    pub fn from_columns(rank: usize, columns: &[Vec<i64>]) -> Result<Self> {
        let cols: Vec<Vec<BigInt>> = columns.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::new(IntMatrix::from_columns(rank, &cols)?)
    }

    pub fn with_extras(weights: IntMatrix, norm_form: IntMatrix, finite_part: Vec<FiniteElement>) -> Result<Self> {
        let a = TorusAction { weights, norm_form, finite_part };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let (r, n) = (self.rank(), self.dim());
        let q = &self.norm_form;
        if q.rows() != r || q.cols() != r {
            return Err(GitError::input(format!("norm form must be {r}x{r}")));
        }
        if !q.is_positive_definite() {
            return Err(GitError::input("norm form must be symmetric positive-definite"));
        }
        for (k, g) in self.finite_part.iter().enumerate() {
            let mut seen = vec![false; n];
            if g.perm.len() != n || g.perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
                return Err(GitError::input(format!("finite part element {k}: not a permutation of {n} coordinates")));
            }
            if g.aut.rows() != r || g.aut.cols() != r {
                return Err(GitError::input(format!("finite part element {k}: automorphism must be {r}x{r}")));
            }
            if !g.aut.det()?.abs().is_one() {
                return Err(GitError::input(format!("finite part element {k}: automorphism is not unimodular")));
            }
            for j in 0..n {
                if g.aut.mul_vec(&self.weights.column(j)) != self.weights.column(g.perm[j]) {
                    return Err(GitError::input(format!(
                        "finite part element {k}: automorphism does not send character {} to character {}",
                        j + 1,
                        g.perm[j] + 1
                    )));
                }
            }
            // cocharacters move by the transpose, so invariance of the norm reads A Q A^T = Q
            let aqat = g.aut.mul(q)?.mul(&g.aut.transpose())?;
            if &aqat != q {
                return Err(GitError::input(format!(
                    "finite part element {k}: automorphism does not preserve the norm form"
                )));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.weights.rows()
    }

    pub fn dim(&self) -> usize {
        self.weights.cols()
    }

    pub fn weights(&self) -> &IntMatrix {
        &self.weights
    }

    pub fn norm_form(&self) -> &IntMatrix {
        &self.norm_form
    }

    pub fn finite_part(&self) -> &[FiniteElement] {
        &self.finite_part
    }

    /// Character `χ_j` of coordinate `j` (0-based).
    pub fn character(&self, j: usize) -> CharacterVector {
        CharacterVector(self.weights.column(j))
    }

    pub fn check_support(&self, s: &Support) -> Result<()> {
        match s.max_index() {
            Some(m) if m >= self.dim() => {
                Err(GitError::input(format!("support index {} out of range for {} coordinates", m + 1, self.dim())))
            }
            _ => Ok(()),
        }
    }

    /// Length check plus invariance under every finite-part automorphism.
    pub fn check_character(&self, chi: &CharacterVector) -> Result<()> {
        if chi.len() != self.rank() {
            return Err(GitError::input(format!(
                "character has length {} but the torus has rank {}",
                chi.len(),
                self.rank()
            )));
        }
        for g in &self.finite_part {
            if g.aut.mul_vec(&chi.0) != chi.0 {
                return Err(GitError::input("character is not invariant under the finite part"));
            }
        }
        Ok(())
    }

    pub fn check_cocharacter(&self, lam: &CocharacterVector) -> Result<()> {
        if lam.0.len() != self.rank() {
            return Err(GitError::input(format!(
                "cocharacter has length {} but the torus has rank {}",
                lam.0.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// `|λ|_Q^2 = λ^T Q λ`
    pub fn norm_squared(&self, lam: &[BigInt]) -> BigInt {
        dot(lam, &self.norm_form.mul_vec(lam))
    }

    /// The whole finite group generated by `finite_part`, identity included.
    pub fn finite_group(&self) -> Result<Vec<FiniteElement>> {
        let id = FiniteElement::identity(self.dim(), self.rank());
        let mut seen: HashSet<FiniteElement> = HashSet::from([id.clone()]);
        let mut order = vec![id];
        let mut frontier = order.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &frontier {
                for h in &self.finite_part {
                    let gh = h.compose(g);
                    if seen.insert(gh.clone()) {
                        order.push(gh.clone());
                        next.push(gh);
                    }
                }
            }
            if order.len() > MAX_FINITE_ORDER {
                return Err(GitError::Declined(format!("finite part generates more than {MAX_FINITE_ORDER} elements")));
            }
            frontier = next;
        }
        Ok(order)
    }
}

/// JSON schema: `{"rank": r, "weights": [[col]...], "norm_form": [[..]],
/// "finite_part": [{"perm": [...], "aut": [[..]]}]}` with 1-based permutations.
#[derive(Serialize, Deserialize)]
struct TorusActionJson {
    rank: usize,
    #[serde(with = "crate::json::int_rows")]
    weights: Vec<Vec<BigInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    norm_form: Option<IntMatrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    finite_part: Vec<FiniteElementJson>,
}

#[derive(Serialize, Deserialize)]
struct FiniteElementJson {
    perm: Vec<usize>,
    aut: IntMatrix,
}

impl Serialize for TorusAction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.rank();
        let norm = (self.norm_form != IntMatrix::identity(r)).then(|| self.norm_form.clone());
        TorusActionJson {
            rank: r,
            weights: self.weights.columns(),
            norm_form: norm,
            finite_part: self
                .finite_part
                .iter()
                .map(|g| FiniteElementJson { perm: g.perm.iter().map(|p| p + 1).collect(), aut: g.aut.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusAction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let j = TorusActionJson::deserialize(d)?;
        let r = j.rank;
        let weights = IntMatrix::from_columns(r, &j.weights).map_err(D::Error::custom)?;
        let norm = match j.norm_form {
            Some(q) if r == 0 && q.rows() == 0 => IntMatrix::identity(0),
            Some(q) => q,
            None => IntMatrix::identity(r),
        };
        let mut fin = Vec::new();
        for g in j.finite_part {
            if g.perm.contains(&0) {
                return Err(D::Error::custom("finite part permutations are 1-based"));
            }
            let aut = if r == 0 { IntMatrix::identity(0) } else { g.aut };
            fin.push(FiniteElement { perm: g.perm.iter().map(|p| p - 1).collect(), aut });
        }
        TorusAction::with_extras(weights, norm, fin).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_slice() -> TorusAction {
        let w = IntMatrix::from_columns(
            3,
            &[
                vec![2.into(), (-1).into(), (-1).into()],
                vec![(-1).into(), 2.into(), (-1).into()],
                vec![(-1).into(), (-1).into(), 2.into()],
            ],
        )
        .unwrap();
        let swap = FiniteElement {
            perm: vec![1, 0, 2],
            aut: IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap(),
        };
        let cycle = FiniteElement {
            perm: vec![1, 2, 0],
            aut: IntMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap(),
        };
        TorusAction::with_extras(w, IntMatrix::identity(3), vec![swap, cycle]).unwrap()
    }

    #[test]
    fn finite_group_closure() {
        assert_eq!(s3_slice().finite_group().unwrap().len(), 6);
    }

    #[test]
    fn incompatible_finite_part_rejected() {
        let w = IntMatrix::from_rows(&[vec![1, 2]]).unwrap();
        let swap = FiniteElement { perm: vec![1, 0], aut: IntMatrix::identity(1) };
        assert!(TorusAction::with_extras(w, IntMatrix::identity(1), vec![swap]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let a = s3_slice();
        let js = serde_json::to_string(&a).unwrap();
        let b: TorusAction = serde_json::from_str(&js).unwrap();
        assert_eq!(a, b);
        let plain: TorusAction = serde_json::from_str(r#"{"rank":1,"weights":[[1],[-1]]}"#).unwrap();
        assert_eq!(plain.dim(), 2);
        let trivial: TorusAction = serde_json::from_str(r#"{"rank":0,"weights":[[],[]]}"#).unwrap();
        assert_eq!((trivial.rank(), trivial.dim()), (0, 2));
    }

    #[test]
    fn supports_one_based_json() {
        let s: Support = serde_json::from_str("[2, 1]").unwrap();
        assert_eq!(s.indices(), &[0, 1]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,2]");
        assert!(serde_json::from_str::<Support>("[0]").is_err());
    }

    #[test]
    fn non_positive_norm_rejected() {
        let w = IntMatrix::from_rows(&[vec![1, -1]]).unwrap();
        assert!(TorusAction::with_extras(w, IntMatrix::from_rows(&[vec![0]]).unwrap(), vec![]).is_err());
    }
}
