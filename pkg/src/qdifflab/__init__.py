"""qdifflab: dissipative wave-packet spreading and quantum-assisted diffusion.

A small numerical laboratory built around three layers:

* dimensionless dispersion dynamics of a damped free / harmonically bound
  wave packet (`dynamics`, `rates`);
* overdamped spreading across a periodic potential and the Bessel-function
  time law it obeys (`periodic`);
* thermally assisted hopping with a semiclassical quantum correction to the
  barrier, down to effective diffusion constants (`thermo`);

plus a direct PDE verifier (`pde`) that evolves the underlying continuity
equations and checks the reduced laws against them, and a CSV-emitting
command line (`cli`).
"""

__version__ = "0.1.0"
