/*!
  \file solvers.hpp
  \brief PTF-finding algorithms on top of the eliminability oracle: exhaustive
         threshold density, greedy and binary-search spectral heuristics, the
         block-elimination baseline, and a seeded binary genetic algorithm.
*/

#pragma once

#include "bf.hpp"
#include "feasibility.hpp"
#include "ptf.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace ptf
{

struct solve_stats
{
  uint64_t oracle_calls{ 0 };
  double elapsed_seconds{ 0.0 };
};

struct solve_result
{
  std::string algorithm;
  ptf_t ptf;
  size_t monomial_count{ 0 };
  elimination_set eliminated;
  solve_stats stats;
  bool bound_missed{ false }; /* block-elimination baseline only */
};

namespace detail
{

class oracle_counter
{
public:
  explicit oracle_counter( boolean_function const& f ) : f_( f ) {}

  std::optional<witness_t> operator()( elimination_set const& e )
  {
    ++calls_;
    return is_eliminable( f_, e );
  }

  uint64_t calls() const { return calls_; }

private:
  boolean_function const& f_;
  uint64_t calls_{ 0 };
};

inline double seconds_since( std::chrono::steady_clock::time_point start )
{
  return std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
}

inline solve_result make_result( std::string algorithm, boolean_function const& f,
                                 elimination_set const& e, witness_t const& w,
                                 uint64_t oracle_calls, double elapsed )
{
  solve_result res{ std::move( algorithm ), ptf_from_witness( f, e, w ), 0, e, {}, false };
  res.ptf.source = res.algorithm;
  res.monomial_count = res.ptf.monomial_count();
  res.stats.oracle_calls = oracle_calls;
  res.stats.elapsed_seconds = elapsed;
  return res;
}

inline witness_t unit_witness( boolean_function const& f )
{
  return witness_t{ std::vector<big_rat>( f.size(), big_rat( 1 ) ) };
}

} // namespace detail

/* --- monomial ordering ------------------------------------------------- */

struct sort_options
{
  bool ascending{ true }; /* smallest key first */
  bool absolute{ true };  /* |s_j| vs signed s_j */
};

/*! Monomials ordered by spectral coefficient (ascending absolute value by
    default), ties broken by ascending index. */
inline std::vector<monomial_id> monomial_order( boolean_function const& f,
                                                sort_options opts = {} )
{
  auto const s = spectrum( f );
  std::vector<monomial_id> order( f.size() );
  for ( monomial_id j = 0; j < order.size(); ++j )
  {
    order[j] = j;
  }
  auto key = [&]( monomial_id j ) -> big_rat {
    return opts.absolute ? boost::multiprecision::abs( s.coeffs[j] ) : s.coeffs[j];
  };
  std::sort( order.begin(), order.end(), [&]( monomial_id x, monomial_id y ) {
    auto const kx = key( x );
    auto const ky = key( y );
    if ( kx != ky )
    {
      return opts.ascending ? kx < ky : kx > ky;
    }
    return x < y;
  } );
  return order;
}

/* --- brute force ------------------------------------------------------- */

struct density_result
{
  bool exact{ false };       /* false when the call budget ran out */
  size_t value{ 0 };         /* exact density, or best-known upper bound */
  solve_result result;       /* witnessed PTF attaining `value` monomials */
};

/*! \brief Exact threshold density by exhaustive search.

  Iterates kept-subsets in increasing cardinality and tests eliminability of
  the complement; the first success is the density.  Refused for n > 4 unless
  `max_oracle_calls` caps the search; on budget exhaustion returns the
  best-so-far upper bound flagged inexact.
*/
inline density_result brute_force_density( boolean_function const& f,
                                           std::optional<uint64_t> max_oracle_calls = std::nullopt )
{
  if ( f.num_vars() > 4 && !max_oracle_calls )
  {
    throw std::invalid_argument( "brute_force_density: n > 4 requires a call budget" );
  }
  auto const start = std::chrono::steady_clock::now();
  size_t const len = f.size();
  detail::oracle_counter oracle( f );

  for ( size_t card = 0; card <= len; ++card )
  {
    /* kept subsets of size `card`, lexicographic */
    std::vector<monomial_id> kept( card );
    for ( size_t i = 0; i < card; ++i )
    {
      kept[i] = monomial_id( i );
    }
    while ( true )
    {
      elimination_set e( f.num_vars() );
      for ( monomial_id j = 0; j < len; ++j )
      {
        e.set( j );
      }
      for ( auto j : kept )
      {
        e.set( j, false );
      }
      if ( max_oracle_calls && oracle.calls() >= *max_oracle_calls )
      {
        auto res = detail::make_result( "brute", f, elimination_set( f.num_vars() ),
                                        detail::unit_witness( f ), oracle.calls(),
                                        detail::seconds_since( start ) );
        return { false, res.monomial_count, std::move( res ) };
      }
      if ( auto w = oracle( e ) )
      {
        auto res = detail::make_result( "brute", f, e, *w, oracle.calls(),
                                        detail::seconds_since( start ) );
        return { true, card, std::move( res ) };
      }
      /* next combination */
      size_t i = card;
      while ( i > 0 && kept[i - 1] == len - card + i - 1 )
      {
        --i;
      }
      if ( i == 0 )
      {
        break;
      }
      ++kept[i - 1];
      for ( size_t p = i; p < card; ++p )
      {
        kept[p] = kept[p - 1] + 1;
      }
    }
  }
  throw std::logic_error( "brute_force_density: no eliminable set found (unreachable)" );
}

/* --- greedy (single pass) heuristic ------------------------------------ */

/*! Greedy single pass in monomial order: grow the elimination set one sorted
    monomial at a time, keeping each monomial whose addition stays eliminable.
    Makes at most 2^n oracle calls. */
inline solve_result l_heuristic( boolean_function const& f, sort_options opts = {} )
{
  auto const start = std::chrono::steady_clock::now();
  detail::oracle_counter oracle( f );
  auto const order = monomial_order( f, opts );

  elimination_set e( f.num_vars() );
  witness_t best = detail::unit_witness( f );
  for ( auto const m : order )
  {
    auto trial = e;
    trial.set( m );
    if ( auto w = oracle( trial ) )
    {
      e = std::move( trial );
      best = std::move( *w );
    }
  }
  return detail::make_result( "l", f, e, best, oracle.calls(),
                              detail::seconds_since( start ) );
}

/* --- binary-search heuristic ------------------------------------------- */

/*! Binary search over prefix length of the monomial order; returns the PTF
    of the largest prefix that passed the oracle.  At most n+1 oracle calls. */
inline solve_result b_heuristic( boolean_function const& f, sort_options opts = {} )
{
  auto const start = std::chrono::steady_clock::now();
  detail::oracle_counter oracle( f );
  auto const order = monomial_order( f, opts );

  elimination_set best_set( f.num_vars() );
  witness_t best = detail::unit_witness( f );
  size_t lo = 1, hi = f.size() - 1;
  while ( lo <= hi )
  {
    size_t const m = ( lo + hi ) / 2;
    elimination_set e( f.num_vars() );
    for ( size_t i = 0; i < m; ++i )
    {
      e.set( order[i] );
    }
    if ( auto w = oracle( e ) )
    {
      best_set = std::move( e );
      best = std::move( *w );
      lo = m + 1;
    }
    else
    {
      hi = m - 1;
      if ( hi == 0 )
      {
        break;
      }
    }
  }
  return detail::make_result( "b", f, best_set, best, oracle.calls(),
                              detail::seconds_since( start ) );
}

/* --- block-elimination baseline ---------------------------------------- */

/*! \brief Eliminates one of the four monomial blocks induced by a variable
    pair, guaranteeing at most 0.75·2^n monomials whenever a block is
    eliminable.

  All pairs and blocks are tried; among eliminable blocks the one whose PTF
  has fewest terms wins (ties: lowest pair, then lowest block index).  When no
  block is eliminable the full spectral polynomial is returned with
  `bound_missed` set.
*/
inline solve_result three_quarters( boolean_function const& f )
{
  if ( f.num_vars() < 2 )
  {
    throw std::invalid_argument( "three_quarters requires n >= 2" );
  }
  auto const start = std::chrono::steady_clock::now();
  detail::oracle_counter oracle( f );
  size_t const len = f.size();

  std::optional<solve_result> best;
  for ( uint32_t i = 0; i < f.num_vars(); ++i )
  {
    for ( uint32_t j = i + 1; j < f.num_vars(); ++j )
    {
      for ( uint32_t block = 0; block < 4; ++block )
      {
        bool const want_i = block & 1;
        bool const want_j = block & 2;
        elimination_set e( f.num_vars() );
        for ( monomial_id m = 0; m < len; ++m )
        {
          if ( bool( ( m >> i ) & 1 ) == want_i && bool( ( m >> j ) & 1 ) == want_j )
          {
            e.set( m );
          }
        }
        if ( auto w = oracle( e ) )
        {
          auto cand = detail::make_result( "3q", f, e, *w, 0, 0.0 );
          if ( !best || cand.monomial_count < best->monomial_count )
          {
            best = std::move( cand );
          }
        }
      }
    }
  }
  if ( !best )
  {
    best = detail::make_result( "3q", f, elimination_set( f.num_vars() ),
                                detail::unit_witness( f ), 0, 0.0 );
    best->bound_missed = true;
  }
  best->stats.oracle_calls = oracle.calls();
  best->stats.elapsed_seconds = detail::seconds_since( start );
  return *best;
}

/* --- genetic algorithm ------------------------------------------------- */

struct ga_config
{
  uint32_t population{ 16 };
  double mutation_rate{ 0.01 };
  uint32_t generations{ 100 };
  double crossover_rate{ 0.9 };
  uint32_t tournament_size{ 2 };
  uint32_t elitism{ 1 };
  uint64_t seed{ 0 };

  void validate() const
  {
    if ( population < 2 )
    {
      throw std::invalid_argument( "ga: population must be >= 2" );
    }
    if ( mutation_rate < 0.0 || mutation_rate > 1.0 || crossover_rate < 0.0 ||
         crossover_rate > 1.0 )
    {
      throw std::invalid_argument( "ga: rates must lie in [0, 1]" );
    }
    if ( tournament_size < 1 )
    {
      throw std::invalid_argument( "ga: tournament size must be >= 1" );
    }
    if ( elitism >= population )
    {
      throw std::invalid_argument( "ga: elitism must be < population" );
    }
  }
};

namespace detail
{

/* stdlib distributions are implementation-defined; draw directly for
   bit-stable reproducibility */
inline double rand_unit( std::mt19937_64& rng )
{
  return double( rng() >> 11 ) * 0x1.0p-53;
}

inline uint64_t rand_below( std::mt19937_64& rng, uint64_t bound )
{
  return rng() % bound;
}

using genotype = std::string; /* one char per monomial, '0'/'1' */

} // namespace detail

/*! \brief Seeded binary GA over elimination indicator vectors.

  Fitness is popcount when the indicated set is eliminable, else 0 (oracle
  results are cached per genotype).  Each generation keeps the top `elitism`
  genotypes and refills by tournament selection, single-point crossover and
  per-bit mutation.  Returns the PTF of the best-ever eliminable genotype, or
  the full spectral polynomial if none was found.  Fully reproducible from
  cfg.seed.
*/
inline solve_result ga_solve( boolean_function const& f, ga_config const& cfg = {} )
{
  cfg.validate();
  auto const start = std::chrono::steady_clock::now();
  size_t const len = f.size();
  detail::oracle_counter oracle( f );
  std::mt19937_64 rng( cfg.seed );

  std::unordered_map<detail::genotype, uint32_t> fitness_cache;
  std::unordered_map<detail::genotype, witness_t> witness_cache;

  auto fitness = [&]( detail::genotype const& g ) -> uint32_t {
    if ( auto it = fitness_cache.find( g ); it != fitness_cache.end() )
    {
      return it->second;
    }
    elimination_set e( f.num_vars() );
    uint32_t bits = 0;
    for ( monomial_id j = 0; j < len; ++j )
    {
      if ( g[j] == '1' )
      {
        e.set( j );
        ++bits;
      }
    }
    uint32_t fit = 0;
    if ( auto w = oracle( e ) )
    {
      fit = bits;
      witness_cache.emplace( g, std::move( *w ) );
    }
    fitness_cache.emplace( g, fit );
    return fit;
  };

  std::vector<detail::genotype> pop( cfg.population, detail::genotype( len, '0' ) );
  for ( auto& g : pop )
  {
    for ( size_t j = 0; j < len; ++j )
    {
      g[j] = detail::rand_unit( rng ) < 0.5 ? '1' : '0';
    }
  }

  detail::genotype best;
  uint32_t best_fit = 0;
  auto consider = [&]( detail::genotype const& g ) {
    auto const fit = fitness( g );
    if ( fit > best_fit )
    {
      best_fit = fit;
      best = g;
    }
  };
  for ( auto const& g : pop )
  {
    consider( g );
  }

  auto tournament = [&]() -> detail::genotype const& {
    size_t winner = detail::rand_below( rng, cfg.population );
    uint32_t winner_fit = fitness( pop[winner] );
    for ( uint32_t c = 1; c < cfg.tournament_size; ++c )
    {
      size_t const cand = detail::rand_below( rng, cfg.population );
      if ( auto const fit = fitness( pop[cand] ); fit > winner_fit )
      {
        winner = cand;
        winner_fit = fit;
      }
    }
    return pop[winner];
  };

  for ( uint32_t gen = 0; gen < cfg.generations; ++gen )
  {
    std::vector<size_t> rank( cfg.population );
    for ( size_t i = 0; i < rank.size(); ++i )
    {
      rank[i] = i;
    }
    std::stable_sort( rank.begin(), rank.end(), [&]( size_t x, size_t y ) {
      return fitness( pop[x] ) > fitness( pop[y] );
    } );

    std::vector<detail::genotype> next;
    next.reserve( cfg.population );
    for ( uint32_t i = 0; i < cfg.elitism; ++i )
    {
      next.push_back( pop[rank[i]] );
    }
    while ( next.size() < cfg.population )
    {
      auto const& p1 = tournament();
      auto const& p2 = tournament();
      detail::genotype child;
      if ( detail::rand_unit( rng ) < cfg.crossover_rate )
      {
        size_t const point = 1 + detail::rand_below( rng, len - 1 );
        child = p1.substr( 0, point ) + p2.substr( point );
      }
      else
      {
        child = p1;
      }
      for ( size_t j = 0; j < len; ++j )
      {
        if ( detail::rand_unit( rng ) < cfg.mutation_rate )
        {
          child[j] = child[j] == '1' ? '0' : '1';
        }
      }
      next.push_back( std::move( child ) );
    }
    pop = std::move( next );
    for ( auto const& g : pop )
    {
      consider( g );
    }
  }

  elimination_set e( f.num_vars() );
  witness_t w = detail::unit_witness( f );
  if ( best_fit > 0 )
  {
    for ( monomial_id j = 0; j < len; ++j )
    {
      if ( best[j] == '1' )
      {
        e.set( j );
      }
    }
    w = witness_cache.at( best );
  }
  return detail::make_result( "ga", f, e, w, oracle.calls(),
                              detail::seconds_since( start ) );
}

} // namespace ptf
