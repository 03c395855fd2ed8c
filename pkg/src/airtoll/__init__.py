"""Emission attribution, dispersion, health costing, and load balancing.

The pipeline runs in four stages, each usable on its own:

- ``attribution`` splits a compute task's emissions into scopes 1 to 3,
- ``dispersion`` maps source emissions to receptor concentrations,
- ``health`` turns concentrations into incidences and dollars,
- ``scheduler`` reallocates load across sites against price signals.

``signals`` and ``stats`` carry the supporting time-series and summary
machinery, and ``cli`` wires everything to scenario files.
"""

__version__ = "0.1.0"
