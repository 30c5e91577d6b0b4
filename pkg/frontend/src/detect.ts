/**
 * Run-event detection used to annotate charts.  Mirrors the simulator's
 * operational definition: the peak has collapsed once it first falls below
 * half of its initial value.  A curve that stops early (the run halted)
 * terminates at its last sample.
 */

export function detectCollapse(times: number[], peaks: number[]): number | null {
  if (peaks.length === 0) return null;
  const threshold = 0.5 * peaks[0];
  for (let k = 0; k < peaks.length; k++) {
    if (peaks[k] < threshold) return times[k];
  }
  return null;
}

export interface Terminal {
  time: number;
  kind: "collapse" | "series end";
}

export function terminalTime(times: number[], peaks: number[]): Terminal {
  const collapse = detectCollapse(times, peaks);
  if (collapse !== null) return { time: collapse, kind: "collapse" };
  return { time: times[times.length - 1], kind: "series end" };
}
