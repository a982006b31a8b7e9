#include "basel/ledger.hpp"

namespace basel::ledger {

namespace {

// Each claim is one step of the derivation of sum 1/(2k+1)^2 = pi^2/8 from
// the double integral I = int int x/((1+x^2)(y^2+x^2)) dy dx over [0,inf)^2,
// and of the squared-kernel and ln^2 extensions built on the same kernel.
constexpr std::string_view kBuiltin = R"(version 1

claim C-01
desc Inner integral of I: int_0^inf dy/(y^2+x^2) = pi/(2x)
cite main derivation: integrate the kernel over y first
param x=0.5
param x=1
param x=2
param x=10
lhs int1d y 0 inf :: 1/(y^2+x^2)
rhs closed :: pi/(2*x)
end

claim C-02
desc Outer integral of I after the y-integration: int_0^inf dx/(1+x^2) = pi/2
cite main derivation: integrate the kernel over y first
lhs int1d x 0 inf :: 1/(1+x^2)
rhs closed :: pi/2
end

claim C-03
desc I = pi^2/4, integrating over y first; the swapped order must agree
cite main derivation: value of the double integral, both orders
lhs int2d x y 0:inf 0:inf order inner-first :: x/((1+x^2)*(y^2+x^2))
rhs closed :: pi^2/4
rhs int2d x y 0:inf 0:inf order outer-first :: x/((1+x^2)*(y^2+x^2))
end

claim C-04
desc x-integral after the order swap, by partial fractions: int_0^inf x dx/((1+x^2)(y^2+x^2)) = -ln(y)/(1-y^2)
cite main derivation: swap the order and use partial fractions in x
param y=0.25
param y=0.5
param y=2
param y=4
lhs int1d x 0 inf :: x/((1+x^2)*(y^2+x^2))
rhs closed :: -ln(y)/(1-y^2)
end

claim C-05
desc I = -int_0^inf ln(y)/(1-y^2) dy, so the integral is -pi^2/4 (removable point y=1 split out)
cite main derivation: reduced single integral over [0,inf)
lhs int1d y 0 inf split 1 :: ln(y)/(1-y^2)
rhs closed :: -pi^2/4
end

claim C-06
desc The pieces over [1,inf) and [0,1] are equal (substitute y -> 1/y)
cite main derivation: split the reduced integral at y=1
lhs int1d y 1 inf :: ln(y)/(1-y^2)
rhs int1d y 0 1 :: ln(y)/(1-y^2)
end

claim C-07
desc int_0^1 ln(y)/(1-y^2) dy = -pi^2/8
cite main derivation: half of the reduced integral
tol 1e-10
lhs int1d y 0 1 :: ln(y)/(1-y^2)
rhs closed :: -pi^2/8
end

claim C-08
desc sum 1/(2k+1)^2 = pi^2/8; the series is also checked against the quadrature value I/2 = -int_0^1 ln(y)/(1-y^2) dy
cite main derivation: equate the two values of I
tol 1e-10
let half_i int1d y 0 1 :: ln(y)/(1-y^2)
lhs series odd 2
rhs closed :: pi^2/8
rhs combo -1 * half_i
end

claim C-09
desc zeta(2) = (4/3) sum 1/(2k+1)^2 = pi^2/6
cite corollary: the even terms contribute zeta(2)/4
tol 1e-9
lhs zeta2
rhs closed :: pi^2/6
end

claim C-10
desc Squared-kernel inner integral: int_0^inf dy/((y^2+x^2)(y^2+z^2)) = pi/(2xz(x+z))
cite squared kernel: integrate over y first
param x=1 z=1
param x=1 z=2
param x=0.5 z=3
lhs int1d y 0 inf :: 1/((y^2+x^2)*(y^2+z^2))
rhs closed :: pi/(2*x*z*(x+z))
end

claim C-11
desc Stated closed form int_0^inf dx/((1+x^2)(x+z)) = (pi/2 - ln z)/(1+z^2); partial fractions give (z*pi/2 - ln z)/(1+z^2), which coincides only at z=1
cite squared kernel: the x-integral quoted as already evaluated
param z=0.5
param z=1
param z=2
lhs int1d x 0 inf :: 1/((1+x^2)*(x+z))
rhs closed :: (pi/2-ln(z))/(1+z^2)
end

claim C-12
desc int_0^inf z^2 dz/(1+z^2)^2 = pi/4 (integration by parts)
cite squared kernel: first by-parts integral
lhs int1d z 0 inf :: z^2/(1+z^2)^2
rhs closed :: pi/4
end

claim C-13
desc int_0^inf z^2 ln(z) dz/(1+z^2)^2 = pi/4 (integration by parts)
cite squared kernel: second by-parts integral
lhs int1d z 0 inf :: z^2*ln(z)/(1+z^2)^2
rhs closed :: pi/4
end

claim C-14
desc Left side J = int int dx dz/((1+x^2)(1+z^2)(x+z)) = pi^2/8 + pi/4, derived by solving (pi/2) J = pi^3/16 + pi^2/8 for J (a derived constant, not a stated one)
cite squared kernel: evaluation of the left side
lhs int2d z x 0:inf 0:inf :: 1/((1+x^2)*(1+z^2)*(x+z))
rhs closed :: pi^2/8+pi/4
end

claim C-15
desc By parts: int_0^1 y^2 ln^2(y)/(1-y^2)^2 dy = -(1/2) int_0^1 ln^2(y)/(1-y^2) dy - int_0^1 ln(y)/(1-y^2) dy; encoded with the consistent (1-y^2)^2 and (1-y^2) denominators (the printed chain mixes them)
cite squared kernel: by-parts step on the right side
let sq int1d y 0 1 :: ln(y)^2/(1-y^2)
let lin int1d y 0 1 :: ln(y)/(1-y^2)
lhs int1d y 0 1 :: y^2*ln(y)^2/(1-y^2)^2
rhs combo -1/2 * sq + -1 * lin
end

claim C-16
desc Stated result int_0^1 ln^2(y)/(1-y^2) dy = pi^3/16
cite squared kernel: final simplification
tol 1e-9
lhs int1d y 0 1 :: ln(y)^2/(1-y^2)
rhs closed :: pi^3/16
end

claim C-17
desc The cross term vanishes: int_0^inf ln(x)/(1+x^2) dx = 0 (antisymmetric under x -> 1/x)
cite ln^2 extension: expansion after y = xz
lhs int1d x 0 inf :: ln(x)/(1+x^2)
rhs closed :: 0
end

claim C-18
desc int int x ln^2(y)/((1+x^2)(y^2+x^2)) dx dy = pi int_0^inf ln^2(z)/(1+z^2) dz; also equals the y = xz form and -int_0^inf ln^3(y)/(1-y^2) dy
cite ln^2 extension: chain through the substitution y = xz
let lnsq int1d z 0 inf :: ln(z)^2/(1+z^2)
let cube int1d y 0 inf split 1 :: ln(y)^3/(1-y^2)
lhs int2d x y 0:inf 0:inf :: x*ln(y)^2/((1+x^2)*(y^2+x^2))
rhs combo pi * lnsq
rhs int2d x z 0:inf 0:inf :: (ln(x)+ln(z))^2/((1+x^2)*(1+z^2))
rhs combo -1 * cube
end

claim C-19
desc int_0^inf ln^2(z)/(1+z^2) dz = pi^3/8, and equals twice the [0,1] piece
cite ln^2 extension: reduction to [0,1]
let piece int1d z 0 1 :: ln(z)^2/(1+z^2)
lhs int1d z 0 inf :: ln(z)^2/(1+z^2)
rhs closed :: pi^3/8
rhs combo 2 * piece
end

claim C-20
desc pi sum (-1)^k/(2k+1)^3 = 3 sum 1/(2k+1)^4; cross-checked against -(1/2) int_0^1 ln^3(y)/(1-y^2) dy. The geometric-series step is printed over [0,inf) but that expansion only holds on [0,1], so it is encoded over [0,1]
cite ln^2 extension: term-by-term geometric series
let cube int1d y 0 1 :: ln(y)^3/(1-y^2)
lhs series altodd 3 scale pi
rhs series odd 4 scale 3
rhs combo -1/2 * cube
end

claim C-21
desc Term integrals int_0^1 y^(2k) ln^p(y) dy = (-1)^p p!/(2k+1)^(p+1); parameter x is k and z is p
cite term-by-term integration of the geometric series
param x=0 z=1
param x=1 z=1
param x=2 z=1
param x=3 z=1
param x=4 z=1
param x=5 z=1
param x=0 z=3
param x=1 z=3
param x=2 z=3
param x=3 z=3
param x=4 z=3
param x=5 z=3
lhs int1d y 0 1 :: y^(2*x)*ln(y)^z
rhs moment :: x, z
end
)";

}  // namespace

std::string_view builtin_manifest() { return kBuiltin; }

}  // namespace basel::ledger
