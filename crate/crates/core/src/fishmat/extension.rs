//! The extension and inflation moves that generate every Fishburn matrix
//! from `[1]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Cell, FishburnMatrix, MatrixError};

/// What happens to one 1-cell of the last column during an extension.
/// Declaration order gives the enumeration order `D < I < S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CodeLetter {
    /// Duplicated into both new columns.
    D,
    /// Ignored: stays in the penultimate column.
    I,
    /// Shifted into the new last column.
    S,
}

impl CodeLetter {
    pub const ALL: [CodeLetter; 3] = [CodeLetter::D, CodeLetter::I, CodeLetter::S];

    fn as_char(self) -> char {
        match self {
            CodeLetter::D => 'D',
            CodeLetter::I => 'I',
            CodeLetter::S => 'S',
        }
    }
}

/// One letter per 1-cell of the parent's last column, top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExtensionCode(pub Vec<CodeLetter>);

impl ExtensionCode {
    pub fn letters(&self) -> &[CodeLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Valid iff some cell is duplicated or ignored, so the penultimate
    /// column of the extension keeps a 1-cell.
    pub fn is_valid(&self) -> bool {
        self.0.iter().any(|&l| l != CodeLetter::S)
    }

    pub fn reversed(&self) -> Self {
        ExtensionCode(self.0.iter().rev().copied().collect())
    }

    /// All valid codes of length `m` in lexicographic order.
    pub fn all_valid(m: usize) -> Vec<ExtensionCode> {
        let mut out = vec![ExtensionCode::default()];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|c| {
                    CodeLetter::ALL.into_iter().map(move |l| {
                        let mut w = c.0.clone();
                        w.push(l);
                        ExtensionCode(w)
                    })
                })
                .collect();
        }
        out.retain(ExtensionCode::is_valid);
        out
    }
}

impl fmt::Display for ExtensionCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl FromStr for ExtensionCode {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|ch| match ch {
                'D' => Ok(CodeLetter::D),
                'I' => Ok(CodeLetter::I),
                'S' => Ok(CodeLetter::S),
                _ => Err(MatrixError::Parse(format!("bad code letter {ch:?}"))),
            })
            .collect::<Result<_, _>>()
            .map(ExtensionCode)
    }
}

/// Positive values for the 1-cells of a primitive matrix.
pub type Inflation = BTreeMap<Cell, u32>;

impl FishburnMatrix {
    /// Splits the last column of a primitive matrix according to `code`.
    pub fn extend(&self, code: &ExtensionCode) -> Result<FishburnMatrix, MatrixError> {
        if !self.is_primitive() {
            return Err(MatrixError::NotPrimitive);
        }
        let k = self.dim();
        let last = self.column_cells(k);
        if code.len() != last.len() {
            return Err(MatrixError::CodeLengthMismatch {
                expected: last.len(),
                found: code.len(),
            });
        }
        if !code.is_valid() {
            return Err(MatrixError::InvalidCode(code.to_string()));
        }
        let k1 = k + 1;
        let mut e = vec![0u32; k1 * k1];
        for i in 1..=k {
            for j in i..k {
                e[(i - 1) * k1 + (j - 1)] = self.at(i, j);
            }
        }
        for (c, &letter) in last.iter().zip(code.letters()) {
            let row = (c.row - 1) * k1;
            let (penult, newlast) = match letter {
                CodeLetter::D => (1, 1),
                CodeLetter::S => (0, 1),
                CodeLetter::I => (1, 0),
            };
            e[row + k - 1] = penult;
            e[row + k] = newlast;
        }
        e[k1 * k1 - 1] = 1;
        Ok(FishburnMatrix::from_raw(k1, e))
    }

    /// Inverse of [`extend`](Self::extend): the unique parent and code.
    pub fn decompose(&self) -> Result<(FishburnMatrix, ExtensionCode), MatrixError> {
        if !self.is_primitive() {
            return Err(MatrixError::NotPrimitive);
        }
        let k1 = self.dim();
        if k1 == 1 {
            return Err(MatrixError::NoParent);
        }
        let k = k1 - 1;
        let mut e = vec![0u32; k * k];
        let mut code = Vec::new();
        for i in 1..=k {
            for j in i..k {
                e[(i - 1) * k + (j - 1)] = self.at(i, j);
            }
            let letter = match (self.at(i, k), self.at(i, k1)) {
                (0, 0) => continue,
                (1, 1) => CodeLetter::D,
                (0, 1) => CodeLetter::S,
                _ => CodeLetter::I,
            };
            e[(i - 1) * k + (k - 1)] = 1;
            code.push(letter);
        }
        Ok((FishburnMatrix::from_raw(k, e), ExtensionCode(code)))
    }

    /// The chain of codes leading from `[1]` to this primitive matrix.
    pub fn code_sequence(&self) -> Result<Vec<ExtensionCode>, MatrixError> {
        let mut codes = Vec::with_capacity(self.dim().saturating_sub(1));
        let mut cur = self.clone();
        while cur.dim() > 1 {
            let (parent, code) = cur.decompose()?;
            codes.push(code);
            cur = parent;
        }
        codes.reverse();
        Ok(codes)
    }

    /// Rebuilds a primitive matrix from `[1]` by successive extensions.
    pub fn from_code_sequence(codes: &[ExtensionCode]) -> Result<FishburnMatrix, MatrixError> {
        codes
            .iter()
            .try_fold(FishburnMatrix::single(1), |p, code| p.extend(code))
    }

    /// Replaces each 1-cell by its value in `values`.
    pub fn inflate(&self, values: &Inflation) -> Result<FishburnMatrix, MatrixError> {
        if !self.is_primitive() {
            return Err(MatrixError::NotPrimitive);
        }
        let ones = self.nonzero_cells();
        if ones.len() != values.len() || ones.iter().any(|c| !values.get(c).is_some_and(|&v| v >= 1)) {
            return Err(MatrixError::InflationMismatch);
        }
        let k = self.dim();
        let mut e = vec![0u32; k * k];
        for (c, &v) in values {
            e[(c.row - 1) * k + (c.col - 1)] = v;
        }
        Ok(FishburnMatrix::from_raw(k, e))
    }

    /// Splits a matrix into its primitive support and the cell values.
    pub fn deflate(&self) -> (FishburnMatrix, Inflation) {
        let k = self.dim();
        let mut e = vec![0u32; k * k];
        let mut values = Inflation::new();
        for c in self.nonzero_cells() {
            e[(c.row - 1) * k + (c.col - 1)] = 1;
            values.insert(c, self.get(c));
        }
        (FishburnMatrix::from_raw(k, e), values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fishmat::tests::m;
    use crate::fishmat::{enumerate_matrices, primitive_matrices, EnumOptions};

    fn code(s: &str) -> ExtensionCode {
        s.parse().unwrap()
    }

    #[test]
    fn extend_examples() {
        let one = FishburnMatrix::single(1);
        assert_eq!(one.extend(&code("D")).unwrap(), m(&[&[1, 1], &[0, 1]]));
        assert_eq!(one.extend(&code("I")).unwrap(), FishburnMatrix::identity(2));
        assert_eq!(
            m(&[&[1, 1], &[0, 1]]).extend(&code("IS")).unwrap(),
            m(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 1]])
        );
    }

    #[test]
    fn extend_errors() {
        let one = FishburnMatrix::single(1);
        assert_eq!(one.extend(&code("S")), Err(MatrixError::InvalidCode("S".into())));
        assert_eq!(
            one.extend(&code("DD")),
            Err(MatrixError::CodeLengthMismatch { expected: 1, found: 2 })
        );
        assert_eq!(
            FishburnMatrix::single(2).extend(&code("D")),
            Err(MatrixError::NotPrimitive)
        );
        assert!("DX".parse::<ExtensionCode>().is_err());
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            m(&[&[1, 1], &[0, 1]]).decompose().unwrap(),
            (FishburnMatrix::single(1), code("D"))
        );
        assert_eq!(
            FishburnMatrix::identity(2).decompose().unwrap(),
            (FishburnMatrix::single(1), code("I"))
        );
        assert_eq!(
            m(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 1]]).decompose().unwrap(),
            (m(&[&[1, 1], &[0, 1]]), code("IS"))
        );
        assert_eq!(FishburnMatrix::single(1).decompose(), Err(MatrixError::NoParent));
    }

    #[test]
    fn extension_count_per_parent() {
        // a parent with m ones in its last column has 3^m - 1 valid extensions
        for m_len in 1..=4 {
            assert_eq!(ExtensionCode::all_valid(m_len).len(), 3usize.pow(m_len as u32) - 1);
        }
    }

    #[test]
    fn decompose_inverts_extend() {
        for p in primitive_matrices(7) {
            for c in ExtensionCode::all_valid(p.last_column_weight() as usize) {
                let child = p.extend(&c).unwrap();
                assert!(child.is_primitive());
                assert_eq!(child.decompose().unwrap(), (p.clone(), c));
            }
        }
    }

    #[test]
    fn code_sequences_are_unique() {
        // distinct primitive matrices have distinct code sequences and each
        // sequence rebuilds its matrix
        let prims = primitive_matrices(8);
        let seqs: std::collections::BTreeSet<_> = prims.iter().map(|p| p.code_sequence().unwrap()).collect();
        assert_eq!(seqs.len(), prims.len());
        for p in &prims {
            let seq = p.code_sequence().unwrap();
            assert_eq!(seq.len(), p.dim() - 1);
            assert_eq!(&FishburnMatrix::from_code_sequence(&seq).unwrap(), p);
        }
    }

    #[test]
    fn inflation_examples() {
        let one = FishburnMatrix::single(1);
        let v: Inflation = [(Cell::new(1, 1), 5)].into();
        assert_eq!(one.inflate(&v).unwrap(), m(&[&[5]]));

        let (p, vals) = m(&[&[2, 1], &[0, 3]]).deflate();
        assert_eq!(p, m(&[&[1, 1], &[0, 1]]));
        assert_eq!(
            vals,
            [(Cell::new(1, 1), 2), (Cell::new(1, 2), 1), (Cell::new(2, 2), 3)].into()
        );

        let bad: Inflation = [(Cell::new(1, 2), 5)].into();
        assert_eq!(one.inflate(&bad), Err(MatrixError::InflationMismatch));
        let zero: Inflation = [(Cell::new(1, 1), 0)].into();
        assert_eq!(one.inflate(&zero), Err(MatrixError::InflationMismatch));
    }

    #[test]
    fn deflate_inflate_round_trip() {
        for mm in enumerate_matrices(5, EnumOptions::default()) {
            let (p, v) = mm.deflate();
            assert_eq!(p.inflate(&v).unwrap(), mm);
        }
    }
}
