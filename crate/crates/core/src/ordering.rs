use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Linear or circular vertex orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Linear,
    Circular,
}

impl Mode {
    pub fn prefix(self) -> &'static str {
        match self {
            Mode::Linear => "lin",
            Mode::Circular => "circ",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Linear => "linear",
            Mode::Circular => "circular",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "lin" => Ok(Mode::Linear),
            "circular" | "circ" => Ok(Mode::Circular),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A permutation of `0..n`. Circular orderings are stored canonically:
/// smallest label first, then the direction whose second entry is smaller
/// than the last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordering {
    mode: Mode,
    perm: Vec<usize>,
}

fn check_perm(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &v in perm {
        if v >= perm.len() || seen[v] {
            return Err(Error::InvalidOrdering(format!(
                "{perm:?} is not a permutation of 0..{}",
                perm.len()
            )));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Rotation/reflection canonical form of a cyclic sequence.
pub fn canonical_circular(perm: &[usize]) -> Vec<usize> {
    let n = perm.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&i| perm[i]).unwrap();
    let mut out: Vec<usize> = (0..n).map(|i| perm[(start + i) % n]).collect();
    if n >= 3 && out[1] > out[n - 1] {
        out[1..].reverse();
    }
    out
}

impl Ordering {
    pub fn new(mode: Mode, perm: Vec<usize>) -> Result<Self> {
        check_perm(&perm)?;
        Ok(Self::new_unchecked(mode, perm))
    }

    pub fn linear(perm: Vec<usize>) -> Result<Self> {
        Self::new(Mode::Linear, perm)
    }

    pub fn circular(perm: Vec<usize>) -> Result<Self> {
        Self::new(Mode::Circular, perm)
    }

    pub(crate) fn new_unchecked(mode: Mode, perm: Vec<usize>) -> Self {
        let perm = match mode {
            Mode::Linear => perm,
            Mode::Circular => canonical_circular(&perm),
        };
        Ordering { mode, perm }
    }

    pub fn identity(mode: Mode, n: usize) -> Self {
        Self::new_unchecked(mode, (0..n).collect())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `positions()[v]` is the index of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn reversed(&self) -> Ordering {
        let mut p = self.perm.clone();
        p.reverse();
        Self::new_unchecked(self.mode, p)
    }

    /// Relabels vertices: vertex `v` becomes `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> Ordering {
        Self::new_unchecked(self.mode, self.perm.iter().map(|&v| map[v]).collect())
    }

    /// Same sequence read in the other mode.
    pub fn as_mode(&self, mode: Mode) -> Ordering {
        Self::new_unchecked(mode, self.perm.clone())
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.perm.iter().map(|v| v.to_string()).collect();
        write!(f, "{}:{}", self.mode.prefix(), labels.join(","))
    }
}

impl FromStr for Ordering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (prefix, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::InvalidOrdering(format!("missing lin:/circ: prefix in {s:?}")))?;
        let mode = match prefix {
            "lin" => Mode::Linear,
            "circ" => Mode::Circular,
            _ => return Err(Error::InvalidOrdering(format!("unknown prefix {prefix:?}"))),
        };
        let perm = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidOrdering(format!("bad label {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ordering::new(mode, perm)
    }
}

impl Serialize for Ordering {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
