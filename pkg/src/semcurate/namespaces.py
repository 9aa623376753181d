"""Namespace IRIs used by the engine and the shipped bibliographic profile."""

from __future__ import annotations

SH = "http://www.w3.org/ns/shacl#"
PROV = "http://www.w3.org/ns/prov#"
DCTERMS = "http://purl.org/dc/terms/"
FOAF = "http://xmlns.com/foaf/0.1/"

# Bibliographic vocabularies (publication types, identifiers, hierarchy,
# roles, citation typing).
FABIO = "http://purl.org/spar/fabio/"
DATACITE = "http://purl.org/spar/datacite/"
LITERAL_REIFICATION = "http://www.essepuntato.it/2010/06/literalreification/"
FRBR = "http://purl.org/vocab/frbr/core#"
PRISM = "http://prismstandard.org/namespaces/basic/2.0/"
PRO = "http://purl.org/spar/pro/"
CITO = "http://purl.org/spar/cito/"

# Profile-specific terms that have no equivalent in the reused vocabularies.
PROFILE_NS = "https://w3id.org/ocdm-paratext/"

# Provenance bookkeeping terms for snapshot deltas.
TRACK_NS = "https://w3id.org/semcurate/track#"

PRISM_KEYWORD = PRISM + "keyword"
DCTERMS_TITLE = DCTERMS + "title"
DCTERMS_ABSTRACT = DCTERMS + "abstract"
DCTERMS_DESCRIPTION = DCTERMS + "description"
FOAF_NAME = FOAF + "name"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
RDFS_RESOURCE = "http://www.w3.org/2000/01/rdf-schema#Resource"

PROV_GENERATED_AT = PROV + "generatedAtTime"
PROV_INVALIDATED_AT = PROV + "invalidatedAtTime"
PROV_ATTRIBUTED_TO = PROV + "wasAttributedTo"
PROV_PRIMARY_SOURCE = PROV + "hadPrimarySource"
PROV_SPECIALIZATION_OF = PROV + "specializationOf"
PROV_ENTITY = PROV + "Entity"

TRACK_ADDED = TRACK_NS + "addedStatements"
TRACK_REMOVED = TRACK_NS + "removedStatements"
