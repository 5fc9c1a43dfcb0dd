#pragma once

#include "errors.hpp"
#include "laurent.hpp"
#include "affine_weyl.hpp"
#include "hecke.hpp"
#include "blob_comb.hpp"
#include "alcove.hpp"
#include "dihedral_blob.hpp"
#include "corpus.hpp"
#include "verify.hpp"
#include "json_io.hpp"
