"""Learning when South should bid after 4S-Double-Pass: deal generation,
double-dummy labels and relational models of the decision."""

__version__ = "0.1.0"
