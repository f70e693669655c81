use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::limits::{self, MAX_BOOL_VARS};
use crate::{Error, Result};

/// A truth table over `n_vars` inputs with its satisfying count cached.
///
/// Input `x` is read as an integer; bit `x` of the table is `f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFunction {
    n_vars: usize,
    words: Vec<u64>,
    sat: u64,
}

fn words_for(n_vars: usize) -> usize {
    (1usize << n_vars).div_ceil(64)
}

impl BooleanFunction {
    fn guard(n_vars: usize) -> Result<()> {
        if n_vars == 0 {
            return Err(Error::domain("a Boolean function needs at least one variable"));
        }
        limits::check(n_vars <= MAX_BOOL_VARS, "MAX_BOOL_VARS", || {
            format!("{n_vars} variables exceed the truth-table limit of {MAX_BOOL_VARS}")
        })
    }

    fn from_words(n_vars: usize, mut words: Vec<u64>) -> Self {
        let len = 1usize << n_vars;
        if !len.is_multiple_of(64) {
            let last = words.len() - 1;
            words[last] &= (1u64 << len) - 1;
        }
        let sat = words.iter().map(|w| w.count_ones() as u64).sum();
        BooleanFunction { n_vars, words, sat }
    }

    pub fn from_fn(n_vars: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        Self::guard(n_vars)?;
        let mut words = vec![0u64; words_for(n_vars)];
        for x in 0..1usize << n_vars {
            if f(x) {
                words[x / 64] |= 1 << (x % 64);
            }
        }
        Ok(Self::from_words(n_vars, words))
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if !bits.len().is_power_of_two() || bits.len() < 2 {
            return Err(Error::domain(format!("truth table length {} is not 2^n with n ≥ 1", bits.len())));
        }
        Self::from_fn(bits.len().trailing_zeros() as usize, |x| bits[x])
    }

    pub fn constant(n_vars: usize, value: bool) -> Result<Self> {
        Self::from_fn(n_vars, |_| value)
    }

    pub fn majority(n_vars: usize) -> Result<Self> {
        Self::from_fn(n_vars, |x| 2 * x.count_ones() as usize > n_vars)
    }

    /// A uniformly random table with exactly `s` satisfying inputs.
    pub fn planted(n_vars: usize, s: u64, rng: &mut impl Rng) -> Result<Self> {
        Self::guard(n_vars)?;
        let len = 1usize << n_vars;
        if s as usize > len {
            return Err(Error::domain(format!("cannot plant {s} ones in {len} entries")));
        }
        let mut words = vec![0u64; words_for(n_vars)];
        for x in rand::seq::index::sample(rng, len, s as usize) {
            words[x / 64] |= 1 << (x % 64);
        }
        Ok(Self::from_words(n_vars, words))
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        1 << self.n_vars
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn eval(&self, x: usize) -> bool {
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn sat_count(&self) -> u64 {
        self.sat
    }

    pub fn negate(&self) -> Self {
        Self::from_words(self.n_vars, self.words.iter().map(|w| !w).collect())
    }

    /// Packed table bytes, bit `x` at byte `x/8`, position `x%8`.
    pub fn table_bytes(&self) -> Vec<u8> {
        let nbytes = self.len().div_ceil(8);
        self.words.iter().flat_map(|w| w.to_le_bytes()).take(nbytes).collect()
    }

    pub fn from_table_bytes(n_vars: usize, bytes: &[u8]) -> Result<Self> {
        Self::guard(n_vars)?;
        let need = (1usize << n_vars).div_ceil(8);
        if bytes.len() != need {
            return Err(Error::invalid(format!(
                "{n_vars}-variable table needs {need} bytes, got {}",
                bytes.len()
            )));
        }
        let mut words = vec![0u64; words_for(n_vars)];
        for (i, b) in bytes.iter().enumerate() {
            words[i / 8] |= (*b as u64) << (8 * (i % 8));
        }
        Ok(Self::from_words(n_vars, words))
    }

    /// File form: 8-byte little-endian `n_vars`, then the packed table.
    pub fn to_file_bytes(&self) -> Vec<u8> {
        let mut out = (self.n_vars as u64).to_le_bytes().to_vec();
        out.extend(self.table_bytes());
        out
    }

    pub fn from_file_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 8 {
            return Err(Error::invalid("truth-table file shorter than its 8-byte header"));
        }
        let n = u64::from_le_bytes(bytes[..8].try_into().unwrap());
        if n > MAX_BOOL_VARS as u64 {
            Self::guard(n as usize)?;
        }
        Self::from_table_bytes(n as usize, &bytes[8..])
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_file_bytes(&std::fs::read(path)?)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_file_bytes())?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BoolJson {
    n_vars: usize,
    bits: String,
}

impl Serialize for BooleanFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoolJson {
            n_vars: self.n_vars,
            bits: hex::encode(self.table_bytes()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BooleanFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = BoolJson::deserialize(d)?;
        let bytes = hex::decode(&j.bits).map_err(D::Error::custom)?;
        BooleanFunction::from_table_bytes(j.n_vars, &bytes).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::random::stream_rng;

    #[test]
    fn counts() {
        assert_eq!(BooleanFunction::constant(3, false).unwrap().sat_count(), 0);
        assert_eq!(BooleanFunction::constant(3, true).unwrap().sat_count(), 8);
        let maj = BooleanFunction::majority(3).unwrap();
        let brute = (0..8).filter(|x: &usize| x.count_ones() >= 2).count() as u64;
        assert_eq!(maj.sat_count(), brute);
        assert_eq!(maj.sat_count(), 4);
        assert_eq!(maj.sat_count() + maj.negate().sat_count(), 8);
        let wide = BooleanFunction::constant(8, true).unwrap();
        assert_eq!(wide.negate().sat_count(), 0);
    }

    #[test]
    fn planted_counts() {
        let mut rng = stream_rng(1, 2);
        for s in [0, 1, 17, 64, 100, 128] {
            let f = BooleanFunction::planted(7, s, &mut rng).unwrap();
            assert_eq!(f.sat_count(), s);
            assert_eq!((0..128).filter(|&x| f.eval(x)).count() as u64, s);
        }
        assert!(BooleanFunction::planted(2, 5, &mut rng).is_err());
    }

    #[test]
    fn file_and_json_roundtrip() {
        let mut rng = stream_rng(3, 0);
        for n in 1..=9 {
            let f = BooleanFunction::planted(n, (1 << n) / 3, &mut rng).unwrap();
            let bytes = f.to_file_bytes();
            assert_eq!(&bytes[..8], &(n as u64).to_le_bytes());
            assert_eq!(BooleanFunction::from_file_bytes(&bytes).unwrap(), f);
            let s = serde_json::to_string(&f).unwrap();
            assert_eq!(serde_json::from_str::<BooleanFunction>(&s).unwrap(), f);
        }
        // f(x) = x on one variable: bit 1 set
        let id = BooleanFunction::from_bits(&[false, true]).unwrap();
        assert_eq!(id.table_bytes(), vec![0b10]);
        assert!(BooleanFunction::from_file_bytes(&[1, 0, 0]).is_err());
        assert!(BooleanFunction::from_table_bytes(4, &[0]).is_err());
    }

    #[test]
    fn guard() {
        assert!(matches!(BooleanFunction::constant(25, true), Err(Error::SizeGuard { .. })));
        assert!(BooleanFunction::constant(0, true).is_err());
    }
}
