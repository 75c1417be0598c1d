use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::Num;

/// Exact ordered ring used for coordinates. Floating point is deliberately not
/// implemented.
pub trait Scalar: Copy + Ord + Num + Debug + Display + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;
}

macro_rules! int_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                <$t>::try_from(v).expect("coordinate out of range for scalar type")
            }
        }
    )*};
}

int_scalar!(i32, i64, i128);

impl Scalar for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
}
