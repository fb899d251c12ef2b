/*!
  \file sweep.hpp
  \brief Experiment sweeps over families of Boolean functions, with exact
         aggregation and CSV/JSON report emission.

  Replay contract: identical sweep specs (including seeds) produce
  byte-identical JSON reports regardless of worker count.  Wall-clock timing
  therefore lives only in the CSV summary, never in the JSON.
*/

#pragma once

#include "bf.hpp"
#include "solvers.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ptf
{

enum class algorithm_id
{
  brute,
  l,
  b,
  three_q,
  ga
};

inline std::string algorithm_name( algorithm_id a )
{
  switch ( a )
  {
  case algorithm_id::brute: return "brute";
  case algorithm_id::l: return "l";
  case algorithm_id::b: return "b";
  case algorithm_id::three_q: return "3q";
  case algorithm_id::ga: return "ga";
  }
  throw std::logic_error( "unreachable" );
}

inline algorithm_id algorithm_from_name( std::string const& s )
{
  if ( s == "brute" ) return algorithm_id::brute;
  if ( s == "l" ) return algorithm_id::l;
  if ( s == "b" ) return algorithm_id::b;
  if ( s == "3q" ) return algorithm_id::three_q;
  if ( s == "ga" ) return algorithm_id::ga;
  throw std::invalid_argument( "unknown algorithm: " + s );
}

struct population_spec
{
  enum class mode
  {
    all,
    first_half,
    sample
  };
  mode kind{ mode::all };
  uint64_t sample_size{ 0 };

  std::string to_string() const
  {
    switch ( kind )
    {
    case mode::all: return "all";
    case mode::first_half: return "first-half";
    case mode::sample: return "sample:" + std::to_string( sample_size );
    }
    throw std::logic_error( "unreachable" );
  }

  static population_spec parse( std::string const& s )
  {
    if ( s == "all" )
    {
      return { mode::all, 0 };
    }
    if ( s == "first-half" )
    {
      return { mode::first_half, 0 };
    }
    if ( s.rfind( "sample:", 0 ) == 0 )
    {
      return { mode::sample, std::stoull( s.substr( 7 ) ) };
    }
    throw std::invalid_argument( "unknown population: " + s );
  }
};

struct sweep_spec
{
  uint32_t n{ 4 };
  std::vector<algorithm_id> algorithms;
  population_spec population;
  uint64_t seed{ 0 };
  ga_config ga;
  sort_options sort;
};

namespace detail
{

inline uint64_t splitmix64( uint64_t x )
{
  x += 0x9e3779b97f4a7c15ULL;
  x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ULL;
  x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebULL;
  return x ^ ( x >> 31 );
}

/* per-function GA seed; independent of execution order and worker count */
inline uint64_t derive_seed( uint64_t sweep_seed, uint64_t function_index )
{
  return splitmix64( sweep_seed ^ splitmix64( function_index ) );
}

} // namespace detail

/*! Function indices F of the selected population, ascending.  Bit t of F
    gives f_t ('1' -> +1). */
inline std::vector<uint64_t> enumerate_functions( uint32_t n, population_spec const& pop,
                                                  uint64_t seed = 0 )
{
  if ( n < 1 || n > 5 )
  {
    throw std::invalid_argument( "enumerate_functions supports 1 <= n <= 5" );
  }
  uint64_t const total = uint64_t( 1 ) << ( uint64_t( 1 ) << n ); /* 2^(2^n) */
  switch ( pop.kind )
  {
  case population_spec::mode::all:
  {
    if ( n > 4 )
    {
      throw std::invalid_argument( "population 'all' refused for n > 4" );
    }
    std::vector<uint64_t> out( total );
    for ( uint64_t i = 0; i < total; ++i )
    {
      out[i] = i;
    }
    return out;
  }
  case population_spec::mode::first_half:
  {
    if ( n > 4 )
    {
      throw std::invalid_argument( "population 'first-half' refused for n > 4" );
    }
    std::vector<uint64_t> out( total / 2 );
    for ( uint64_t i = 0; i < total / 2; ++i )
    {
      out[i] = i;
    }
    return out;
  }
  case population_spec::mode::sample:
  {
    if ( n <= 4 && pop.sample_size > total )
    {
      throw std::invalid_argument( "sample size exceeds population" );
    }
    std::mt19937_64 rng( seed );
    std::set<uint64_t> chosen;
    while ( chosen.size() < pop.sample_size )
    {
      uint64_t const draw = n == 5 ? rng() & 0xffffffffULL : rng() % total;
      chosen.insert( draw );
    }
    return { chosen.begin(), chosen.end() };
  }
  }
  throw std::logic_error( "unreachable" );
}

struct algorithm_summary
{
  std::map<size_t, uint64_t> histogram; /* monomial count -> #functions */
  big_rat average{ 0 };
  uint64_t oracle_calls{ 0 };
  double total_seconds{ 0.0 };
};

struct sweep_report
{
  sweep_spec spec;
  uint64_t population_size{ 0 };
  std::map<std::string, algorithm_summary> results;
};

/*! \brief Runs every selected algorithm on every function of the population.

  Every produced PTF is verified before it is counted; a verification failure
  aborts with a forensic message.  Results are merged in function-index order,
  so the report is independent of the worker count.
*/
inline sweep_report sweep( sweep_spec const& spec, unsigned num_workers = 1 )
{
  auto const functions = enumerate_functions( spec.n, spec.population, spec.seed );
  if ( num_workers == 0 )
  {
    num_workers = 1;
  }

  struct cell
  {
    size_t monomials;
    uint64_t oracle_calls;
    double seconds;
  };
  std::vector<std::vector<cell>> grid( functions.size(),
                                       std::vector<cell>( spec.algorithms.size() ) );
  std::vector<std::string> failures( num_workers );

  auto run_range = [&]( size_t worker, size_t begin, size_t end ) {
    try
    {
      for ( size_t idx = begin; idx < end; ++idx )
      {
        auto const f = boolean_function::from_bits( spec.n, functions[idx] );
        for ( size_t a = 0; a < spec.algorithms.size(); ++a )
        {
          solve_result res = [&]() {
            switch ( spec.algorithms[a] )
            {
            case algorithm_id::brute: return brute_force_density( f ).result;
            case algorithm_id::l: return l_heuristic( f, spec.sort );
            case algorithm_id::b: return b_heuristic( f, spec.sort );
            case algorithm_id::three_q: return three_quarters( f );
            case algorithm_id::ga:
            {
              auto cfg = spec.ga;
              cfg.seed = detail::derive_seed( spec.seed, functions[idx] );
              return ga_solve( f, cfg );
            }
            }
            throw std::logic_error( "unreachable" );
          }();
          if ( auto const rep = verify_ptf( res.ptf, f ); !rep.ok )
          {
            throw std::runtime_error(
                "sweep: verification failed for F=" + std::to_string( functions[idx] ) +
                " algorithm=" + res.algorithm + " ptf=" + ptf_to_json( res.ptf ).dump() );
          }
          grid[idx][a] = { res.monomial_count, res.stats.oracle_calls,
                           res.stats.elapsed_seconds };
        }
      }
    }
    catch ( std::exception const& ex )
    {
      failures[worker] = ex.what();
    }
  };

  if ( num_workers == 1 || functions.size() < 2 * num_workers )
  {
    run_range( 0, 0, functions.size() );
  }
  else
  {
    std::vector<std::thread> threads;
    size_t const chunk = ( functions.size() + num_workers - 1 ) / num_workers;
    for ( unsigned w = 0; w < num_workers; ++w )
    {
      size_t const begin = std::min( size_t( w ) * chunk, functions.size() );
      size_t const end = std::min( begin + chunk, functions.size() );
      threads.emplace_back( run_range, w, begin, end );
    }
    for ( auto& t : threads )
    {
      t.join();
    }
  }
  for ( auto const& msg : failures )
  {
    if ( !msg.empty() )
    {
      throw std::runtime_error( msg );
    }
  }

  sweep_report report;
  report.spec = spec;
  report.population_size = functions.size();
  for ( size_t a = 0; a < spec.algorithms.size(); ++a )
  {
    algorithm_summary sum;
    big_int total_monomials = 0;
    for ( size_t idx = 0; idx < functions.size(); ++idx )
    {
      auto const& c = grid[idx][a];
      ++sum.histogram[c.monomials];
      total_monomials += c.monomials;
      sum.oracle_calls += c.oracle_calls;
      sum.total_seconds += c.seconds;
    }
    if ( !functions.empty() )
    {
      sum.average = big_rat( total_monomials, big_int( functions.size() ) );
    }
    report.results.emplace( algorithm_name( spec.algorithms[a] ), std::move( sum ) );
  }
  return report;
}

/* --- report emission --------------------------------------------------- */

/*! Exact decimal rendering of a rational, `digits` places, round half away
    from zero.  Deterministic across platforms. */
inline std::string decimal_string( big_rat const& r, unsigned digits = 6 )
{
  big_int num = boost::multiprecision::numerator( r );
  big_int const den = boost::multiprecision::denominator( r );
  bool const neg = num < 0;
  if ( neg )
  {
    num = -num;
  }
  big_int scale = 1;
  for ( unsigned i = 0; i < digits; ++i )
  {
    scale *= 10;
  }
  big_int const scaled = ( num * scale * 2 + den ) / ( den * 2 ); /* round */
  big_int const whole = scaled / scale;
  big_int frac = scaled % scale;
  std::ostringstream os;
  if ( neg && scaled != 0 )
  {
    os << '-';
  }
  os << whole << '.';
  std::string fs = frac.str();
  os << std::string( digits - fs.size(), '0' ) << fs;
  return os.str();
}

inline nlohmann::ordered_json report_to_json( sweep_report const& rep )
{
  nlohmann::ordered_json spec;
  spec["n"] = rep.spec.n;
  std::vector<std::string> algs;
  for ( auto const a : rep.spec.algorithms )
  {
    algs.push_back( algorithm_name( a ) );
  }
  spec["algorithms"] = algs;
  spec["population"] = rep.spec.population.to_string();
  spec["seed"] = rep.spec.seed;
  spec["sort"] = { { "ascending", rep.spec.sort.ascending },
                   { "absolute", rep.spec.sort.absolute } };
  spec["ga"] = { { "population", rep.spec.ga.population },
                 { "mutation_rate", rep.spec.ga.mutation_rate },
                 { "generations", rep.spec.ga.generations },
                 { "crossover_rate", rep.spec.ga.crossover_rate },
                 { "tournament_size", rep.spec.ga.tournament_size },
                 { "elitism", rep.spec.ga.elitism } };

  nlohmann::ordered_json results;
  for ( auto const& [name, sum] : rep.results )
  {
    nlohmann::ordered_json hist = nlohmann::ordered_json::array();
    for ( auto const& [monomials, count] : sum.histogram )
    {
      hist.push_back( { monomials, count } );
    }
    results[name] = { { "histogram", hist },
                      { "average", format_rat( sum.average ) },
                      { "average_decimal", decimal_string( sum.average ) },
                      { "oracle_calls", sum.oracle_calls } };
  }
  return { { "schema", 1 },
           { "spec", spec },
           { "population_size", rep.population_size },
           { "results", results } };
}

inline sweep_report report_from_json( nlohmann::json const& j )
{
  if ( j.at( "schema" ).get<int>() != 1 )
  {
    throw std::invalid_argument( "unsupported report schema" );
  }
  sweep_report rep;
  auto const& spec = j.at( "spec" );
  rep.spec.n = spec.at( "n" ).get<uint32_t>();
  for ( auto const& a : spec.at( "algorithms" ) )
  {
    rep.spec.algorithms.push_back( algorithm_from_name( a.get<std::string>() ) );
  }
  rep.spec.population = population_spec::parse( spec.at( "population" ).get<std::string>() );
  rep.spec.seed = spec.at( "seed" ).get<uint64_t>();
  rep.spec.sort.ascending = spec.at( "sort" ).at( "ascending" ).get<bool>();
  rep.spec.sort.absolute = spec.at( "sort" ).at( "absolute" ).get<bool>();
  auto const& ga = spec.at( "ga" );
  rep.spec.ga.population = ga.at( "population" ).get<uint32_t>();
  rep.spec.ga.mutation_rate = ga.at( "mutation_rate" ).get<double>();
  rep.spec.ga.generations = ga.at( "generations" ).get<uint32_t>();
  rep.spec.ga.crossover_rate = ga.at( "crossover_rate" ).get<double>();
  rep.spec.ga.tournament_size = ga.at( "tournament_size" ).get<uint32_t>();
  rep.spec.ga.elitism = ga.at( "elitism" ).get<uint32_t>();
  rep.population_size = j.at( "population_size" ).get<uint64_t>();
  for ( auto const& [name, r] : j.at( "results" ).items() )
  {
    algorithm_summary sum;
    for ( auto const& pair : r.at( "histogram" ) )
    {
      sum.histogram[pair.at( 0 ).get<size_t>()] = pair.at( 1 ).get<uint64_t>();
    }
    sum.average = parse_rat( r.at( "average" ).get<std::string>() );
    sum.oracle_calls = r.at( "oracle_calls" ).get<uint64_t>();
    rep.results.emplace( name, std::move( sum ) );
  }
  return rep;
}

/*! Writes report.json, histogram.csv and summary.csv into `out_dir`.
    Timing appears only in summary.csv. */
inline void emit_report( sweep_report const& rep, std::string const& out_dir,
                         bool json = true, bool csv = true )
{
  if ( json )
  {
    std::ofstream os( out_dir + "/report.json" );
    if ( !os )
    {
      throw std::runtime_error( "cannot write " + out_dir + "/report.json" );
    }
    os << report_to_json( rep ).dump( 2 ) << '\n';
  }
  if ( csv )
  {
    {
      std::ofstream os( out_dir + "/histogram.csv" );
      if ( !os )
      {
        throw std::runtime_error( "cannot write " + out_dir + "/histogram.csv" );
      }
      os << "algorithm,monomials,count\n";
      for ( auto const& [name, sum] : rep.results )
      {
        for ( auto const& [monomials, count] : sum.histogram )
        {
          os << name << ',' << monomials << ',' << count << '\n';
        }
      }
    }
    {
      std::ofstream os( out_dir + "/summary.csv" );
      if ( !os )
      {
        throw std::runtime_error( "cannot write " + out_dir + "/summary.csv" );
      }
      os << "algorithm,avg_monomials,avg_seconds,oracle_calls\n";
      for ( auto const& [name, sum] : rep.results )
      {
        double const avg_sec =
            rep.population_size ? sum.total_seconds / double( rep.population_size ) : 0.0;
        os << name << ',' << decimal_string( sum.average ) << ',' << avg_sec << ','
           << sum.oracle_calls << '\n';
      }
    }
  }
}

} // namespace ptf
