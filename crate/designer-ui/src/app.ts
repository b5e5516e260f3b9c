// Wiring of editor, scheduler and service for a concrete view.

import { closeNet, createEditor, dragControlPoint, EditorState, Lift, releaseControlPoint } from "./editor.js";
import { DesignRequest, designRequest, Diagnostic, Fetch, Outcome, requestDesign } from "./client.js";
import { DomainPoint, exportNet, importNet } from "./net.js";
import { Scene } from "./scene.js";
import { Clock, DesignScheduler } from "./scheduler.js";

export interface View {
  render(scene: Scene): void;
  showDiagnostic(diagnostic: Diagnostic | null): void;
  setPending(pending: boolean): void;
}

export interface AppOptions {
  fetch: Fetch;
  baseUrl: string;
  view: View;
  clock?: Clock;
  intervalMs?: number;
  request?: Partial<DesignRequest>;
}

export class DesignerApp {
  state: EditorState<Scene>;
  private readonly scheduler: DesignScheduler<DesignRequest, Outcome>;

  constructor(
    net: readonly DomainPoint[],
    lift: Lift,
    private readonly opts: AppOptions,
  ) {
    this.state = createEditor<Scene>(net, lift);
    this.scheduler = new DesignScheduler<DesignRequest, Outcome>({
      send: (req) => requestDesign(opts.fetch, opts.baseUrl, req),
      apply: (outcome) => this.receive(outcome),
      intervalMs: opts.intervalMs,
      clock: opts.clock,
    });
  }

  private receive(outcome: Outcome): void {
    if (outcome.ok) {
      this.state = { ...this.state, lastResponse: outcome.scene };
      this.opts.view.render(outcome.scene);
      this.opts.view.showDiagnostic(null);
    } else {
      this.opts.view.showDiagnostic(outcome.diagnostic);
    }
    this.syncPending();
  }

  private syncPending(): void {
    this.state = { ...this.state, pending: this.scheduler.pending };
    this.opts.view.setPending(this.scheduler.pending);
  }

  private changed(): void {
    this.scheduler.schedule(designRequest(this.state.net, this.state.lift, this.opts.request));
    this.syncPending();
  }

  drag(index: number, to: DomainPoint): void {
    this.state = dragControlPoint(this.state, index, to);
    this.changed();
  }

  release(index: number): void {
    this.state = releaseControlPoint(this.state, index);
    this.changed();
  }

  setLift(lift: Lift): void {
    this.state = { ...this.state, lift };
    this.changed();
  }

  setC1Snap(on: boolean): void {
    this.state = { ...this.state, c1Snap: on };
  }

  /** Loads a net file as written; an open net is sent as well so the
   * service reports it and the view can offer {@link closeCurve}. */
  importFile(text: string): void {
    this.state = { ...this.state, net: importNet(text), selection: null };
    this.changed();
  }

  /** Fix-it for an open net. */
  closeCurve(): void {
    this.state = { ...this.state, net: closeNet(this.state.net) };
    this.changed();
  }

  exportFile(): string {
    return exportNet(this.state.net);
  }
}
