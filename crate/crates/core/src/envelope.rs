//! Eventual order of a finite family of affine functions `α_i + t_i·γ` as `γ`
//! increases towards a cut.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordval::{fmt_q, qi, Cut, CutSide, GroupValue, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineItem {
    pub index: i64,
    pub intercept: GroupValue,
    pub slope: i64,
}

impl AffineItem {
    pub fn new(index: i64, intercept: GroupValue, slope: i64) -> Self {
        AffineItem { index, intercept, slope }
    }

    pub fn value_at(&self, gamma: &Q) -> GroupValue {
        &self.intercept + &(gamma * qi(self.slope))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFamily {
    items: Vec<AffineItem>,
    approach: Cut,
}

/// Threshold and permutation returned by [`eventual_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventualOrder {
    /// Every γ at or above this value and below the approach cut gives `order`.
    pub threshold: Q,
    /// Indices, largest value first. Items with infinite intercept come first.
    pub order: Vec<i64>,
    /// The largest crossing point below the approach cut, if any.
    pub max_crossing: Option<Q>,
}

impl AffineFamily {
    pub fn new(items: Vec<AffineItem>, approach: Cut) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut slopes: Vec<i64> = items.iter().map(|it| it.slope).collect();
        slopes.sort_unstable();
        if let Some(w) = slopes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSlope(w[0]));
        }
        Ok(AffineFamily { items, approach })
    }

    pub fn items(&self) -> &[AffineItem] {
        &self.items
    }

    pub fn approach(&self) -> &Cut {
        &self.approach
    }

    pub fn with_intercept_shift(&self, k: &Q) -> AffineFamily {
        let items = self
            .items
            .iter()
            .map(|it| AffineItem { intercept: &it.intercept + k, ..it.clone() })
            .collect();
        AffineFamily { items, approach: self.approach.clone() }
    }

    fn finite(&self) -> impl Iterator<Item = (&AffineItem, &Q)> {
        self.items.iter().filter_map(|it| it.intercept.finite().map(|a| (it, a)))
    }

    /// All pairwise crossing points of finite items.
    pub fn crossings(&self) -> Vec<Q> {
        let fin: Vec<_> = self.finite().collect();
        let mut out = Vec::new();
        for (k, (a, ai)) in fin.iter().enumerate() {
            for (b, bi) in &fin[k + 1..] {
                out.push((*ai - *bi) / qi(b.slope - a.slope));
            }
        }
        out
    }
}

pub fn eventual_order(fam: &AffineFamily) -> Result<EventualOrder> {
    let crossings = fam.crossings();
    let relevant = |c: &Q| match &fam.approach {
        Cut::Principal { boundary, .. } => c < boundary,
        Cut::PlusInfinity => true,
    };
    let max_crossing = crossings.iter().filter(|c| relevant(c)).max().cloned();
    let threshold = match (&fam.approach, &max_crossing) {
        (Cut::Principal { boundary, .. }, Some(m)) => (m + boundary) / qi(2),
        (Cut::Principal { boundary, .. }, None) => boundary - qi(1),
        (Cut::PlusInfinity, Some(m)) => m + qi(1),
        (Cut::PlusInfinity, None) => qi(0),
    };
    let mut infinite: Vec<&AffineItem> =
        fam.items.iter().filter(|it| !it.intercept.is_finite()).collect();
    infinite.sort_by_key(|it| it.index);
    let mut finite: Vec<(&AffineItem, &Q)> = fam.finite().collect();
    match &fam.approach {
        Cut::PlusInfinity => finite.sort_by(|x, y| y.0.slope.cmp(&x.0.slope)),
        Cut::Principal { boundary, side } => {
            let at = |a: &Q, s: i64| a + boundary * qi(s);
            if *side == CutSide::BelowOrEqual
                && crossings.iter().any(|c| c == boundary)
            {
                // The cut contains its boundary and two items meet there.
                return Err(Error::NoAdmissibleGamma);
            }
            finite.sort_by(|x, y| {
                at(y.1, y.0.slope)
                    .cmp(&at(x.1, x.0.slope))
                    .then(x.0.slope.cmp(&y.0.slope))
            });
        }
    }
    let order = infinite
        .iter()
        .map(|it| it.index)
        .chain(finite.iter().map(|(it, _)| it.index))
        .collect();
    Ok(EventualOrder { threshold, order, max_crossing })
}

pub fn eventual_argmin(fam: &AffineFamily) -> Result<i64> {
    if fam.finite().next().is_none() {
        return Err(Error::AllInfinite);
    }
    let ord = eventual_order(fam)?;
    Ok(*ord.order.last().expect("nonempty family"))
}

impl std::fmt::Display for EventualOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ord: Vec<String> = self.order.iter().map(|i| i.to_string()).collect();
        write!(f, "beta={} order=[{}]", fmt_q(&self.threshold), ord.join(","))
    }
}
