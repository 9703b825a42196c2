"""Wang and hexagon tile sets compiled from machines, trees and cellular automata."""

__version__ = "0.1.0"
