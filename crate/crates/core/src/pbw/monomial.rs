use std::fmt;

/// An ordered PBW monomial: run-length encoded generator powers followed by a
/// power of the central element.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PBWMonomial {
    word: Vec<(i64, u32)>,
    central_exp: u32,
}

impl PBWMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Run-length encodes `word`; adjacent equal indices merge.
    pub fn from_word(word: &[i64], central_exp: u32) -> Self {
        let mut out: Vec<(i64, u32)> = Vec::new();
        for &i in word {
            match out.last_mut() {
                Some((j, e)) if *j == i => *e += 1,
                _ => out.push((i, 1)),
            }
        }
        Self {
            word: out,
            central_exp,
        }
    }

    /// Zero exponents are dropped and adjacent equal indices merged.
    pub fn from_powers(powers: &[(i64, u32)], central_exp: u32) -> Self {
        let mut out: Vec<(i64, u32)> = Vec::new();
        for &(i, e) in powers.iter().filter(|(_, e)| *e > 0) {
            match out.last_mut() {
                Some((j, f)) if *j == i => *f += e,
                _ => out.push((i, e)),
            }
        }
        Self {
            word: out,
            central_exp,
        }
    }

    pub fn powers(&self) -> &[(i64, u32)] {
        &self.word
    }

    pub fn central_exp(&self) -> u32 {
        self.central_exp
    }

    /// One entry per generator factor.
    pub fn expanded(&self) -> Vec<i64> {
        self.word
            .iter()
            .flat_map(|&(i, e)| std::iter::repeat(i).take(e as usize))
            .collect()
    }

    pub fn degree(&self) -> i64 {
        self.word.iter().map(|&(i, e)| i * e as i64).sum()
    }

    /// Number of generator factors, not counting `c`.
    pub fn word_len(&self) -> u32 {
        self.word.iter().map(|&(_, e)| e).sum()
    }

    /// Number of factors including powers of `c`.
    pub fn total_len(&self) -> u32 {
        self.word_len() + self.central_exp
    }

    pub fn is_one(&self) -> bool {
        self.word.is_empty() && self.central_exp == 0
    }

    pub fn contains(&self, index: i64) -> bool {
        self.word.iter().any(|&(i, _)| i == index)
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        self.word.iter().map(|&(i, _)| i)
    }

    /// True when the word is empty apart from a power of `e_0`.
    pub fn is_cartan(&self) -> bool {
        self.word.iter().all(|&(i, _)| i == 0)
    }

    pub fn e0_power(&self) -> u32 {
        self.word
            .iter()
            .filter(|&&(i, _)| i == 0)
            .map(|&(_, e)| e)
            .sum()
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .word
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    format!("e({i})")
                } else {
                    format!("e({i})^{e}")
                }
            })
            .collect();
        match self.central_exp {
            0 => {}
            1 => parts.push("c".into()),
            k => parts.push(format!("c^{k}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}
