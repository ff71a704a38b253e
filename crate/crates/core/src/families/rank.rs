use crate::audit::{IndependenceSystem, INDEPENDENCE_LIMIT};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::setfn::{GroundSet, SetFunction, Subset, ValueTable};

/// `f(X) = max { w(Y) : Y ∈ I, Y ⊆ X }`, tabulated.
pub struct WeightedRank {
    table: ValueTable,
}

impl WeightedRank {
    pub fn table(&self) -> &ValueTable {
        &self.table
    }
}

impl SetFunction for WeightedRank {
    fn ground(&self) -> &GroundSet {
        self.table.ground()
    }

    fn value(&self, set: Subset) -> Rational {
        self.table.value(set)
    }
}

/// Builds the weighted rank function of `sys`.
///
/// A dependent `X` has every independent subset inside some `X \ {x}`, so
/// `f(X) = max_x f(X \ {x})`; independent sets take their own weight.
pub fn weighted_rank_oracle(sys: &IndependenceSystem) -> Result<WeightedRank> {
    let n = sys.n();
    if n > INDEPENDENCE_LIMIT {
        return Err(Error::SizeLimit {
            what: "weighted rank",
            n,
            limit: INDEPENDENCE_LIMIT,
        });
    }
    sys.validate()?;
    // X \ {x} < X as masks, so increasing order reads only finished entries.
    let mut values: Vec<Rational> = Vec::with_capacity(1 << n);
    for bits in 0..1u64 << n {
        let x = Subset::from_bits(bits);
        let v = if sys.is_independent(x) {
            sys.weight(x)
        } else {
            x.iter()
                .map(|e| &values[x.without(e).bits() as usize])
                .max()
                .expect("a dependent set is nonempty")
                .clone()
        };
        values.push(v);
    }
    Ok(WeightedRank {
        table: ValueTable::from_values(sys.ground().clone(), values)?,
    })
}
