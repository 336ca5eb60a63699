use std::fmt;
use std::str::FromStr;

/// Base ranking of the generators that are not promoted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseOrder {
    Ascending,
    Descending,
}

/// A total order on the indexed generators; fixes which PBW basis a normal
/// form is expressed in. Lower-ranked generators appear further left.
///
/// `promoted` generators rank above every other generator, listed from lowest
/// to highest rank; the last entry is the rightmost factor in a normal form.
/// The central element is not ranked.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderSpec {
    pub base: BaseOrder,
    pub promoted: Vec<i64>,
}

/// Sort key of a generator index under an [`OrderSpec`].
pub type Rank = (u8, i64);

impl OrderSpec {
    pub fn new(base: BaseOrder, promoted: Vec<i64>) -> Result<Self, OrderError> {
        for (k, i) in promoted.iter().enumerate() {
            if promoted[..k].contains(i) {
                return Err(OrderError::DuplicatePromotion(*i));
            }
        }
        Ok(Self { base, promoted })
    }

    /// Indices ascending left to right.
    pub fn asc() -> Self {
        Self {
            base: BaseOrder::Ascending,
            promoted: Vec::new(),
        }
    }

    /// Indices descending left to right.
    pub fn desc() -> Self {
        Self {
            base: BaseOrder::Descending,
            promoted: Vec::new(),
        }
    }

    /// Ascending, then `e_0`, then `e_g` rightmost.
    pub fn ann(g: i64) -> Self {
        let promoted = if g == 0 { vec![0] } else { vec![0, g] };
        Self {
            base: BaseOrder::Ascending,
            promoted,
        }
    }

    /// Negative generators as `e_{-i_1}...e_{-i_k}` with `i_1 >= ... >= i_k`,
    /// then `e_0`, then positive generators ascending. As a total order this
    /// is the same as [`OrderSpec::asc`].
    pub fn hw() -> Self {
        Self::asc()
    }

    pub fn rank(&self, index: i64) -> Rank {
        if let Some(p) = self.promoted.iter().position(|&i| i == index) {
            return (1, p as i64);
        }
        match self.base {
            BaseOrder::Ascending => (0, index),
            BaseOrder::Descending => (0, -index),
        }
    }

    pub fn in_order(&self, a: i64, b: i64) -> bool {
        self.rank(a) <= self.rank(b)
    }

    /// True when `e_0` ranks above every unpromoted generator.
    pub fn cartan_trails(&self) -> bool {
        self.promoted.contains(&0)
    }

    /// Generator of the left ideal this order was built for, if it is an ANN preset.
    pub fn ann_generator(&self) -> Option<i64> {
        match (self.base, self.promoted.as_slice()) {
            (BaseOrder::Ascending, [0, g]) => Some(*g),
            _ => None,
        }
    }
}

impl Default for OrderSpec {
    fn default() -> Self {
        Self::asc()
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = self.ann_generator() {
            return write!(f, "ann:{g}");
        }
        match self.base {
            BaseOrder::Ascending => f.write_str("asc")?,
            BaseOrder::Descending => f.write_str("desc")?,
        }
        for i in &self.promoted {
            write!(f, ">{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("unknown order {0:?}: expected asc, desc, hw, ann:<g> or asc>i>j...")]
    Unknown(String),
    #[error("generator e({0}) promoted twice")]
    DuplicatePromotion(i64),
}

impl FromStr for OrderSpec {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || OrderError::Unknown(s.to_string());
        let s = s.trim();
        match s {
            "asc" => return Ok(Self::asc()),
            "desc" => return Ok(Self::desc()),
            "hw" => return Ok(Self::hw()),
            _ => {}
        }
        if let Some(g) = s.strip_prefix("ann:") {
            let g: i64 = g.trim().parse().map_err(|_| unknown())?;
            return Ok(Self::ann(g));
        }
        let mut parts = s.split('>');
        let base = match parts.next() {
            Some("asc") => BaseOrder::Ascending,
            Some("desc") => BaseOrder::Descending,
            _ => return Err(unknown()),
        };
        let promoted = parts
            .map(|p| p.trim().parse::<i64>().map_err(|_| unknown()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(base, promoted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_rank_as_documented() {
        let asc = OrderSpec::asc();
        assert!(asc.in_order(-2, -1) && asc.in_order(-1, 0) && asc.in_order(0, 1));
        let desc = OrderSpec::desc();
        assert!(desc.in_order(2, -2));
        let ann = OrderSpec::ann(-1);
        assert!(ann.in_order(2, 0) && ann.in_order(0, -1) && ann.in_order(-5, 7));
        assert!(!ann.in_order(-1, 0));
        assert_eq!(OrderSpec::hw(), OrderSpec::asc());
    }

    #[test]
    fn display_parse_round_trip() {
        for o in [
            OrderSpec::asc(),
            OrderSpec::desc(),
            OrderSpec::ann(-1),
            OrderSpec::ann(2),
            OrderSpec::new(BaseOrder::Descending, vec![3, -1]).unwrap(),
        ] {
            assert_eq!(o.to_string().parse::<OrderSpec>().unwrap(), o);
        }
        assert_eq!("hw".parse::<OrderSpec>().unwrap(), OrderSpec::asc());
        assert!("up".parse::<OrderSpec>().is_err());
        assert!("asc>1>1".parse::<OrderSpec>().is_err());
    }
}
