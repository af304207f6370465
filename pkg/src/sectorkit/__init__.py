"""sector-kit: desk-scale verified computations for superselection-sector
machinery -- finite group fusion data, quantum double modular matrices,
Jones indices, Temperley-Lieb Markov traces, Verlinde consistency checks,
and wedge-localized Zamolodchikov-Faddeev operators."""

from . import double, groups, inclusions, spinchain, tl, verlinde, wedge

__all__ = ["double", "groups", "inclusions", "spinchain", "tl", "verlinde", "wedge"]

__version__ = "0.1.0"
