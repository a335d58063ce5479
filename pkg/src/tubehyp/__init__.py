"""tubehyp: hyperbolicity analysis of tube domains over planar bases."""

__version__ = "0.1.0"
