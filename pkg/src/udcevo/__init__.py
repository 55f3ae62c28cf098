"""Parse UDC notation, ingest scheme editions and trace their change over time."""

from .notation import (
    AuxKind,
    AuxSegment,
    ClassificationMode,
    ConnectorKind,
    MainClassLabel,
    MainNumber,
    NotationSyntaxError,
    Term,
    UdcExpression,
    auxiliary_profile,
    canonical,
    main_class,
    parse,
    render,
)

__version__ = "0.1.0"
