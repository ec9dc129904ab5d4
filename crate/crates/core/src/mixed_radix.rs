//! Generalised positional representations.
//!
//! A [`RadixBase`] `(m1, …, mk)` represents integers in `[M]`, `M = m2·…·mk`,
//! as digit vectors `(0, x2, …, xk)` with `x = Σ_{i≥2} x_i ∏_{j>i} m_j`. The
//! leading digit is always zero for plain representations; it exists so the
//! vectors line up with k-partite edge tuples.
//!
//! [`PairBase`] handles the product `∏ Z_{m_i} × Z_{n_i/m_i}` used to index the
//! vertices of K_{n1,…,nk} when each part is split by a divisor `m_i | n_i`.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadixBase {
    moduli: Vec<usize>,
}

impl RadixBase {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::Config(
                "a radix base needs at least one modulus".into(),
            ));
        }
        if moduli.contains(&0) {
            return Err(Error::Config(format!("zero modulus in base {:?}", moduli)));
        }
        Ok(RadixBase { moduli })
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn k(&self) -> usize {
        self.moduli.len()
    }

    /// M = m2 · … · mk (the first modulus is excluded).
    pub fn modulus(&self) -> usize {
        self.moduli[1..].iter().product()
    }

    /// ⟨x⟩ for `x ∈ [M]`.
    pub fn encode(&self, x: usize) -> Result<RadixVector> {
        let m = self.modulus();
        if x >= m {
            return Err(Error::OutOfRange {
                what: "x",
                value: x,
                bound: m,
            });
        }
        let mut digits = vec![0; self.k()];
        let mut rest = x;
        for i in (1..self.k()).rev() {
            digits[i] = rest % self.moduli[i];
            rest /= self.moduli[i];
        }
        Ok(RadixVector {
            base: self.clone(),
            digits,
        })
    }
}

/// A digit vector tied to the base it was produced in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadixVector {
    base: RadixBase,
    digits: Vec<usize>,
}

impl RadixVector {
    pub fn base(&self) -> &RadixBase {
        &self.base
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn decode(&self) -> usize {
        self.digits[1..]
            .iter()
            .zip(&self.base.moduli[1..])
            .fold(0, |acc, (&d, &m)| acc * m + d)
    }

    /// ⟨(x + 1) mod M⟩, computed by carrying from the last digit.
    pub fn succ(&self) -> RadixVector {
        let mut digits = self.digits.clone();
        for i in (1..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < self.base.moduli[i] {
                break;
            }
            digits[i] = 0;
        }
        RadixVector {
            base: self.base.clone(),
            digits,
        }
    }

    fn check_same_base(&self, other: &RadixVector) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(
                self.base.moduli.clone(),
                other.base.moduli.clone(),
            ));
        }
        Ok(())
    }

    /// Digit-wise sum modulo each modulus.
    pub fn add(&self, other: &RadixVector) -> Result<RadixVector> {
        self.check_same_base(other)?;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .zip(&self.base.moduli)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        Ok(RadixVector {
            base: self.base.clone(),
            digits,
        })
    }

    /// Digit-wise difference modulo each modulus.
    pub fn sub(&self, other: &RadixVector) -> Result<RadixVector> {
        self.check_same_base(other)?;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .zip(&self.base.moduli)
            .map(|((&a, &b), &m)| (a + m - b) % m)
            .collect();
        Ok(RadixVector {
            base: self.base.clone(),
            digits,
        })
    }
}

pub fn encode(x: usize, base: &RadixBase) -> Result<RadixVector> {
    base.encode(x)
}

pub fn succ(v: &RadixVector) -> RadixVector {
    v.succ()
}

/// The split of every part `[n_i]` into `Z_{m_i} × Z_{n_i/m_i}`, vertex
/// `y` corresponding to the pair `(y div (n_i/m_i), y mod (n_i/m_i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairBase {
    sizes: Vec<usize>,
    moduli: RadixBase,
    cofactors: RadixBase,
}

/// An element of `∏ Z_{m_i} × Z_{n_i/m_i}`, i.e. an edge of K_{n1,…,nk}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairVector {
    pub pairs: Vec<(usize, usize)>,
}

/// ⟨x*⟩: the pair vector whose every coordinate encodes the integer `x`.
pub type DiagonalVector = PairVector;

impl PairBase {
    pub fn new(sizes: &[usize], moduli: &[usize]) -> Result<Self> {
        if sizes.len() != moduli.len() {
            return Err(Error::Config(format!(
                "{} sizes but {} moduli",
                sizes.len(),
                moduli.len()
            )));
        }
        for (i, (&n, &m)) in sizes.iter().zip(moduli).enumerate() {
            if m == 0 || n % m != 0 {
                return Err(Error::Config(format!(
                    "modulus m{} = {} does not divide n{} = {}",
                    i + 1,
                    m,
                    i + 1,
                    n
                )));
            }
        }
        let cofactors = sizes.iter().zip(moduli).map(|(&n, &m)| n / m).collect();
        Ok(PairBase {
            sizes: sizes.to_vec(),
            moduli: RadixBase::new(moduli.to_vec())?,
            cofactors: RadixBase::new(cofactors)?,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn moduli(&self) -> &RadixBase {
        &self.moduli
    }

    pub fn cofactors(&self) -> &RadixBase {
        &self.cofactors
    }

    /// ⟨x*⟩ for `x ∈ [n1]`: coordinate `i` is the Euclidean split of `x` by `n_i/m_i`.
    pub fn diagonal(&self, x: usize) -> Result<DiagonalVector> {
        if x >= self.sizes[0] {
            return Err(Error::OutOfRange {
                what: "x",
                value: x,
                bound: self.sizes[0],
            });
        }
        let pairs = self
            .cofactors
            .moduli()
            .iter()
            .zip(self.moduli.moduli())
            .map(|(&q, &m)| {
                let hi = x / q;
                if hi >= m {
                    return Err(Error::Config(format!(
                        "x = {x} does not fit a part split as {m} × {q}"
                    )));
                }
                Ok((hi, x % q))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PairVector { pairs })
    }

    /// ⟨(i, j)⟩ for `i ∈ [d]`, `j ∈ [N/d]`: interleaves ⟨i⟩ in base m̄ with ⟨j⟩ in base n̄/m̄.
    pub fn index_pair(&self, i: usize, j: usize) -> Result<PairVector> {
        let hi = self.moduli.encode(i)?;
        let lo = self.cofactors.encode(j)?;
        Ok(PairVector {
            pairs: hi
                .digits()
                .iter()
                .copied()
                .zip(lo.digits().iter().copied())
                .collect(),
        })
    }

    pub fn add(&self, a: &PairVector, b: &PairVector) -> PairVector {
        self.combine(a, b, |x, y, m| (x + y) % m)
    }

    pub fn sub(&self, a: &PairVector, b: &PairVector) -> PairVector {
        self.combine(a, b, |x, y, m| (x + m - y) % m)
    }

    fn combine(
        &self,
        a: &PairVector,
        b: &PairVector,
        op: impl Fn(usize, usize, usize) -> usize,
    ) -> PairVector {
        let pairs = a
            .pairs
            .iter()
            .zip(&b.pairs)
            .zip(self.moduli.moduli().iter().zip(self.cofactors.moduli()))
            .map(|((&(x1, y1), &(x2, y2)), (&m, &q))| (op(x1, x2, m), op(y1, y2, q)))
            .collect();
        PairVector { pairs }
    }

    /// The vertex tuple an element stands for: coordinate `(x, y)` of part `i` is vertex `x·(n_i/m_i) + y`.
    pub fn to_tuple(&self, v: &PairVector) -> Vec<usize> {
        v.pairs
            .iter()
            .zip(self.cofactors.moduli())
            .map(|(&(x, y), &q)| x * q + y)
            .collect()
    }
}

/// ⟨x*⟩ over the split defined by `moduli` and `sizes`; requires `m1 = n1` and `m_i | n_i`.
pub fn diagonal(x: usize, moduli: &RadixBase, sizes: &[usize]) -> Result<DiagonalVector> {
    if moduli.moduli()[0] != sizes[0] {
        return Err(Error::Config(format!(
            "first modulus {} must equal n1 = {}",
            moduli.moduli()[0],
            sizes[0]
        )));
    }
    PairBase::new(sizes, moduli.moduli())?.diagonal(x)
}
