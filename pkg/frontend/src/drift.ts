/**
 * Exact drift quotient eta(e) = N(e)/L(e) and a bisection root-finder,
 * used only to draw the dashed eta(e) = p/q reference lines.  Display
 * support; never feeds back into the CSV data being plotted.
 */

export function etaExact(e: number): number {
  const e2 = e * e;
  const num = 1 + 7.5 * e2 + 5.625 * e2 * e2 + 0.3125 * e2 * e2 * e2;
  const den = Math.pow(1 - e2, 1.5) * (1 + 3 * e2 + 0.375 * e2 * e2);
  return num / den;
}

/** e solving eta(e) = target, or null when outside [0, eMax] */
export function eccentricityForDrift(target: number, eMax = 0.95): number | null {
  if (target < 1 || etaExact(eMax) < target) return null;
  let lo = 0;
  let hi = eMax;
  for (let i = 0; i < 80; i++) {
    const mid = 0.5 * (lo + hi);
    if (etaExact(mid) < target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}
