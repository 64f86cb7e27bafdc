#pragma once

namespace steinhaus {

double bessel_j0(double r);

// Fourier transform of normalised surface measure on S^{d-1} at radius r, d in {2, 3}.
double sphere_ft(int d, double r);

// C_d with |sphere_ft(d, r)| <= C_d (1 + r)^{-(d-1)/2} for all r >= 0.
double sphere_decay_constant(int d);

// Upper bound for sup_{r' >= r} |sphere_ft(d, r')|.
double sphere_ft_sup_beyond(int d, double r);

}  // namespace steinhaus
